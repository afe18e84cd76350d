#include "maghardy/flux.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "maghardy/quadrature.hpp"

namespace maghardy {

std::string to_string(FluxMethod m) {
  return m == FluxMethod::kBoundary ? "boundary" : "surface";
}

FluxMethod flux_method_from_string(const std::string& s) {
  if (s == "boundary") return FluxMethod::kBoundary;
  if (s == "surface") return FluxMethod::kSurface;
  throw std::invalid_argument("unknown flux method '" + s + "' (expected boundary or surface)");
}

double flux_via_surface(const FieldSpec& field, double r, double theta,
                        const QuadratureConfig& quad) {
  if (!(r > 0.0)) throw std::invalid_argument("flux_via_surface: r must be positive");
  if (!(theta > 0.0 && theta <= M_PI)) {
    throw std::invalid_argument("flux_via_surface: theta must lie in (0, pi]");
  }
  const int n_phi = field.phi_independent() ? 1 : std::max(4, quad.n_phi);
  auto ring_mean_Br = [&](double th) {
    double acc = 0.0;
    for (int k = 0; k < n_phi; ++k) {
      const double phi = 2.0 * M_PI * k / n_phi;
      acc += field.radial_component(Point3::spherical(r, th, phi));
    }
    return acc / n_phi;
  };
  // (1/2pi) * int_0^theta int_0^2pi B_r r^2 sin = r^2 int_0^theta <B_r>_ring sin
  const double polar = gauss_integrate(
      [&](double th) { return ring_mean_Br(th) * std::sin(th); }, 0.0, theta,
      std::max(4, quad.n_theta));
  return r * r * polar;
}

double flux_via_boundary(const GaugePotential& gauge, double r, double theta,
                         const QuadratureConfig& quad) {
  if (!(r > 0.0)) throw std::invalid_argument("flux_via_boundary: r must be positive");
  if (!(theta > 0.0 && theta < M_PI)) {
    throw std::invalid_argument("flux_via_boundary: theta must lie in (0, pi)");
  }
  const int n_phi = gauge.axisymmetric() ? 1 : std::max(4, quad.n_phi);
  const double s = std::sin(theta);
  double acc = 0.0;
  for (int k = 0; k < n_phi; ++k) {
    const double phi = 2.0 * M_PI * k / n_phi;
    const Point3 p = Point3::spherical(r, theta, phi);
    acc += dot(gauge.eval(p), unit_phi(p));
  }
  // (1/2pi) * oint A.dl = (1/2pi) * r sin(theta) * int_0^2pi A_phi dphi
  return r * s * (acc / n_phi) * (2.0 * M_PI) / (2.0 * M_PI);
}

FluxProfile flux_profile(const FieldSpec& field, const GaugePotential& gauge,
                         const std::vector<double>& r_grid, const std::vector<double>& theta_grid,
                         FluxMethod method, const QuadratureConfig& quad) {
  if (r_grid.empty() || theta_grid.empty()) {
    throw std::invalid_argument("flux_profile: empty grid");
  }
  FluxProfile out;
  out.r = r_grid;
  out.theta = theta_grid;
  out.method = to_string(method);
  out.value.assign(r_grid.size(), std::vector<double>(theta_grid.size(), 0.0));
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    for (std::size_t j = 0; j < theta_grid.size(); ++j) {
      out.value[i][j] = (method == FluxMethod::kBoundary)
                            ? flux_via_boundary(gauge, r_grid[i], theta_grid[j], quad)
                            : flux_via_surface(field, r_grid[i], theta_grid[j], quad);
    }
  }
  return out;
}

void write_flux_csv(const FluxProfile& profile, std::ostream& out) {
  out << "r,theta,flux\n";
  char buf[128];
  for (std::size_t i = 0; i < profile.r.size(); ++i) {
    for (std::size_t j = 0; j < profile.theta.size(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", profile.r[i], profile.theta[j],
                    profile.value[i][j]);
      out << buf;
    }
  }
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 1) throw std::invalid_argument("linspace: need at least one node");
  std::vector<double> g(n);
  if (n == 1) {
    g[0] = a;
    return g;
  }
  for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / (n - 1);
  return g;
}

std::vector<double> logspace(double a, double b, int n) {
  if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("logspace: endpoints must be positive");
  std::vector<double> g = linspace(std::log(a), std::log(b), n);
  for (double& x : g) x = std::exp(x);
  return g;
}

std::vector<double> theta_midpoint_grid(int n) {
  if (n < 1) throw std::invalid_argument("theta_midpoint_grid: need at least one node");
  std::vector<double> g(n);
  const double h = M_PI / n;
  for (int i = 0; i < n; ++i) g[i] = (i + 0.5) * h;
  return g;
}

}  // namespace maghardy
