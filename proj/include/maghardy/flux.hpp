#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "maghardy/field.hpp"
#include "maghardy/gauge.hpp"

namespace maghardy {

struct QuadratureConfig {
  int n_theta = 64;  // Gauss order for polar integrals
  int n_phi = 64;    // trapezoid node count for azimuthal rings
};

enum class FluxMethod { kBoundary, kSurface };

std::string to_string(FluxMethod m);
FluxMethod flux_method_from_string(const std::string& s);

// Normalized flux of B through the spherical cap {|x| = r, polar angle <= theta},
// divided by 2*pi. Computed from B itself: (1/2pi) iint B_r r^2 sin dtheta dphi.
// The polar quadrature lives on the open interval (0, theta), so fields that
// blow up on the axis but keep B_r*sin bounded integrate cleanly.
double flux_via_surface(const FieldSpec& field, double r, double theta,
                        const QuadratureConfig& quad = {});

// Same quantity from the cap boundary: (r sin theta / 2pi) * ring average of
// A_phi * 2pi. Agrees with the surface route whenever curl A = B across the
// whole cap; for gauges built from fields that funnel flux through the origin
// the two differ by exactly the funneled amount, which is the point of having
// both routes.
double flux_via_boundary(const GaugePotential& gauge, double r, double theta,
                         const QuadratureConfig& quad = {});

struct FluxProfile {
  std::vector<double> r;       // strictly increasing, positive
  std::vector<double> theta;   // strictly increasing, inside (0, pi)
  std::vector<std::vector<double>> value;  // value[i][j] at (r[i], theta[j])
  std::string method;
};

FluxProfile flux_profile(const FieldSpec& field, const GaugePotential& gauge,
                         const std::vector<double>& r_grid, const std::vector<double>& theta_grid,
                         FluxMethod method = FluxMethod::kBoundary,
                         const QuadratureConfig& quad = {});

// columns r,theta,flux with 17 significant digits
void write_flux_csv(const FluxProfile& profile, std::ostream& out);

std::vector<double> linspace(double a, double b, int n);
std::vector<double> logspace(double a, double b, int n);  // geometric, a, b > 0
// n midpoints of a uniform n-cell split of (0, pi); never touches the axis
std::vector<double> theta_midpoint_grid(int n);

}  // namespace maghardy
