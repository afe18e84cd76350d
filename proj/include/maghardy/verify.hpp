#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "maghardy/certificate.hpp"
#include "maghardy/gauge.hpp"

namespace maghardy {

// Separable complex test function u(x) = f(r, theta) * exp(i m phi) with real
// f. Built-ins carry analytic first derivatives; tabulated inputs fall back to
// centered finite differences.
struct TestFunction {
  std::string name;
  int m = 0;
  double r_lo = 0.0;
  double r_hi = 1.0;
  std::vector<double> r_knots;  // radial quadrature panel hints inside [r_lo, r_hi]
  std::function<double(double, double)> value;    // f(r, theta)
  std::function<double(double, double)> d_r;      // df/dr
  std::function<double(double, double)> d_theta;  // df/dtheta
};

// Gaussian centered at (0, 0, z0) on the polar axis, width sigma.
TestFunction make_gaussian_bump(double z0, double sigma);

// exp(-(r-r0)^2 / (2 sigma^2)) * sin(theta)^p * e^{i m phi}; p >= |m| keeps
// the azimuthal kinetic term finite on the axis.
TestFunction make_ring_gaussian(double r0, double sigma, int m, int p);

// r^{-1/2} h(log r) with h a C^1 plateau: smoothstep ramps of the given
// log-widths on either side of the plateau [a, b]. Scale-critical: its
// kinetic-minus-Hardy cost is just the ramp cost, so it probes weights whose
// mass spreads over many decades.
TestFunction make_log_tent(double a, double b, double ramp_lo, double ramp_hi);

// bilinear interpolation of samples on (r_grid, theta_grid); gradients by
// centered differences with the given step
TestFunction make_tabulated(std::string name, std::vector<double> r_grid,
                            std::vector<double> theta_grid,
                            std::vector<std::vector<double>> values, int m,
                            double fd_step = 1e-5);

// deterministic 20-member audit suite: axis bumps, ring harmonics, log tents
std::vector<TestFunction> default_suite();

struct VerificationReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // lhs - rhs
  double tol = 0.0;
  bool pass = false;
  std::string meta;

  nlohmann::json to_json() const;
};

void write_reports_jsonl(const std::vector<VerificationReport>& reports, std::ostream& out);

// Smallest eigenvalue of the weighted Neumann problem
//   (1/sin)(sin v')' v-form:  int (v'^2 + V v^2) sin / int v^2 sin
// discretized on an open uniform grid of n midpoint cells, solved by Sturm
// bisection on the symmetrized tridiagonal matrix. V==0 gives 0 exactly and
// V==c gives c exactly.
double angular_oracle_min_eigenvalue(const std::function<double(double)>& V, int n = 2000);

// Checks int f^2 sin <= k1(c) int f'^2 sin for f with f(c) = 0.
VerificationReport poincare_margin(const std::function<double(double)>& f,
                                   const std::function<double(double)>& fprime, double c,
                                   int quad_order = 128);

// One-dimensional radial profile v(r) with analytic derivative, compactly
// supported in (r_lo, r_hi).
struct RadialTestFunction {
  std::string name;
  double r_lo = 0.0;
  double r_hi = 1.0;
  std::vector<double> r_knots;
  std::function<double(double)> value;
  std::function<double(double)> deriv;
};

// Checks the reduced inequality
//   int (v'^2 + w2 v^2) r dr >= D1 int v^2 / (1 + r^2 log^2(r/m)) r dr
// with D1, m derived from the interval exactly as the certificate does.
VerificationReport radial_log_inequality_check(const RadialInterval& interval,
                                               const std::function<double(double)>& w2,
                                               const RadialTestFunction& v);

struct FormMarginConfig {
  int r_order = 20;            // Gauss order per radial panel
  double max_panel_log = 0.75; // maximum radial panel width in log scale
  int n_theta = 48;            // Gauss order for the polar integral
  int n_phi = 16;              // ring samples for gauge averages (1 used when axisymmetric)
  double tol_rel = 1e-6;       // pass when margin >= -tol_rel * |lhs|
  double weight_factor = 1.0;  // multiplies the weight (used to stress-test certificates)
};

// Quadratic-form check  int |(-i grad - A) u|^2 - 1/4 int |u|^2/|x|^2  >=  int w |u|^2
// by tensor quadrature over the support of u. Also reports the magnetic-free
// kinetic value in meta so diamagnetic comparisons are possible.
VerificationReport form_margin(const GaugePotential& gauge, const Weight& weight,
                               const TestFunction& u, const FormMarginConfig& cfg = {});

struct AuditOptions {
  FormMarginConfig form;
  double inflate = 1.0;  // weight multiplier applied before auditing
};

// Re-derives field and gauge from the certificate document and runs
// form_margin for each suite member against the certified weight.
std::vector<VerificationReport> certificate_audit(const WeightCertificate& cert,
                                                  const std::vector<TestFunction>& suite,
                                                  const AuditOptions& opts = {});

// Gauge reconstruction used by certificate_audit, exposed for reuse.
GaugePotential gauge_from_certificate(const WeightCertificate& cert);

}  // namespace maghardy
