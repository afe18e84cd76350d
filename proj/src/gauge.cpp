#include "maghardy/gauge.hpp"

#include <algorithm>
#include <cmath>

#include "maghardy/quadrature.hpp"

namespace maghardy {

GaugePotential GaugePotential::multipolar(const FieldSpec& field, int quad_order) {
  if (quad_order < 2) quad_order = 2;
  auto f = [field, quad_order](const Point3& p) -> Vec3 {
    if (p.r <= 0.0) return {0.0, 0.0, 0.0};

    // Panel boundaries in s. Fields with sharp radial structure advertise the
    // radii; aligning panels there keeps Gauss competitive when the integrand
    // has near-kinks inside [0, 1].
    std::vector<double> breaks{0.0, 1.0};
    for (double rb : field.radial_breakpoints()) {
      double s = rb / p.r;
      if (s > 1e-12 && s < 1.0 - 1e-12) breaks.push_back(s);
    }
    std::sort(breaks.begin(), breaks.end());

    const int per_panel = quad_order <= 64 ? quad_order : 32;
    const int extra_panels = quad_order <= 64 ? 1 : std::max(1, quad_order / 32);
    const GaussRule& rule = gauss_rule(per_panel);

    Vec3 acc{0.0, 0.0, 0.0};
    for (std::size_t seg = 0; seg + 1 < breaks.size(); ++seg) {
      double h = (breaks[seg + 1] - breaks[seg]) / extra_panels;
      for (int panel = 0; panel < extra_panels; ++panel) {
        double a = breaks[seg] + panel * h;
        double mid = a + 0.5 * h, half = 0.5 * h;
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
          double s = mid + half * rule.x[i];
          Point3 q = Point3::cartesian(s * p.x, s * p.y, s * p.z);
          acc += (rule.w[i] * half) * cross(field.eval(q), q.vec());
        }
      }
    }
    return acc;
  };
  return from_function(std::move(f), "multipolar(" + field.name() + ")",
                       field.phi_independent());
}

GaugePotential GaugePotential::ab_azimuthal(double alpha) {
  auto f = [alpha](const Point3& p) -> Vec3 {
    double rho = std::sqrt(p.x * p.x + p.y * p.y);
    return (alpha / (p.r * rho)) * Vec3{-p.y, p.x, 0.0};
  };
  return from_function(std::move(f), "ab_azimuthal", true);
}

GaugePotential GaugePotential::zero() {
  return from_function([](const Point3&) { return Vec3{0.0, 0.0, 0.0}; }, "zero", true);
}

GaugePotential GaugePotential::from_function(Eval f, std::string label, bool axisymmetric) {
  GaugePotential g;
  g.eval_ = std::move(f);
  g.label_ = std::move(label);
  g.axisymmetric_ = axisymmetric;
  return g;
}

double GaugePotential::transversality_residual(const Point3& p) const {
  Vec3 a = eval(p);
  return std::abs(dot(a, p.vec())) / (1.0 + p.r * norm(a));
}

Vec3 curl_fd(const GaugePotential& gauge, const Point3& p, double h) {
  auto at = [&](double dx, double dy, double dz) {
    return gauge.eval(Point3::cartesian(p.x + dx, p.y + dy, p.z + dz));
  };
  Vec3 dyA = (at(0, h, 0) - at(0, -h, 0)) * (0.5 / h);
  Vec3 dzA = (at(0, 0, h) - at(0, 0, -h)) * (0.5 / h);
  Vec3 dxA = (at(h, 0, 0) - at(-h, 0, 0)) * (0.5 / h);
  return {dyA.z - dzA.y, dzA.x - dxA.z, dxA.y - dyA.x};
}

double curl_residual(const GaugePotential& gauge, const FieldSpec& field, const Point3& p,
                     double step) {
  return norm(curl_fd(gauge, p, step) - field.eval(p));
}

}  // namespace maghardy
