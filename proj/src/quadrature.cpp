#include "maghardy/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace maghardy {

static GaussRule build_rule(int n) {
  GaussRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n(x) = 0.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.x[i] = -x;
    rule.x[n - 1 - i] = x;
    rule.w[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.w[n - 1 - i] = rule.w[i];
  }
  return rule;
}

const GaussRule& gauss_rule(int order) {
  if (order < 1) throw std::invalid_argument("gauss_rule: order must be >= 1");
  static std::map<int, GaussRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, build_rule(order)).first;
  return it->second;
}

double gauss_integrate(const std::function<double(double)>& f, double a, double b, int order) {
  const GaussRule& r = gauss_rule(order);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) acc += r.w[i] * f(mid + half * r.x[i]);
  return acc * half;
}

double gauss_integrate_panels(const std::function<double(double)>& f, double a, double b,
                              int order, int panels) {
  if (panels < 1) panels = 1;
  double acc = 0.0, h = (b - a) / panels;
  for (int k = 0; k < panels; ++k) acc += gauss_integrate(f, a + k * h, a + (k + 1) * h, order);
  return acc;
}

double gauss_integrate_breaks(const std::function<double(double)>& f,
                              const std::vector<double>& breaks, int order) {
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k)
    acc += gauss_integrate(f, breaks[k], breaks[k + 1], order);
  return acc;
}

double trapezoid_periodic(const std::function<double(double)>& f, int n) {
  if (n < 1) throw std::invalid_argument("trapezoid_periodic: n must be >= 1");
  double acc = 0.0, h = 2.0 * M_PI / n;
  for (int i = 0; i < n; ++i) acc += f(i * h);
  return acc * h;
}

}  // namespace maghardy
