#pragma once

#include <functional>
#include <vector>

namespace maghardy {

// Gauss-Legendre nodes and weights on [-1, 1], Newton iteration on the
// Legendre recurrence. Cached per order.
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

const GaussRule& gauss_rule(int order);

// integral of f over [a, b] with a single Gauss panel
double gauss_integrate(const std::function<double(double)>& f, double a, double b, int order);

// composite rule: [a, b] cut into equal panels
double gauss_integrate_panels(const std::function<double(double)>& f, double a, double b,
                              int order, int panels);

// composite rule over explicit breakpoints b0 < b1 < ... < bn
double gauss_integrate_breaks(const std::function<double(double)>& f,
                              const std::vector<double>& breaks, int order);

// Periodic trapezoid over [0, 2*pi); spectrally accurate for smooth periodic
// integrands, exact for trigonometric polynomials of degree < n.
double trapezoid_periodic(const std::function<double(double)>& f, int n);

}  // namespace maghardy
