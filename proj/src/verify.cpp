#include "maghardy/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <ostream>
#include <stdexcept>

#include "maghardy/quadrature.hpp"

namespace maghardy {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

// Radial quadrature breakpoints for [lo, hi]: user knots, then geometric
// subdivision so no panel exceeds max_panel_log in log width. A segment that
// starts at 0 is covered by a geometric cascade down to hi_seg * 1e-12 plus
// one closing panel at 0; integrands here vanish at least like r^2, so the
// innermost panel carries nothing that Gauss nodes would miss.
std::vector<double> radial_panel_breaks(double lo, double hi, const std::vector<double>& knots,
                                        double max_panel_log) {
  if (!(hi > lo)) throw std::invalid_argument("radial_panel_breaks: empty range");
  if (!(max_panel_log > 0.0)) max_panel_log = 0.75;
  std::vector<double> base{lo, hi};
  for (double k : knots)
    if (k > lo && k < hi) base.push_back(k);
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());

  std::vector<double> out;
  out.push_back(base.front());
  for (std::size_t seg = 0; seg + 1 < base.size(); ++seg) {
    double a = base[seg], b = base[seg + 1];
    if (a <= 0.0) {
      double tiny = b * 1e-12;
      int k = static_cast<int>(std::ceil(std::log(b / tiny) / max_panel_log));
      for (int i = k; i >= 1; --i) out.push_back(b * std::exp(-i * max_panel_log));
    } else {
      int nsub = std::max(1, static_cast<int>(std::ceil(std::log(b / a) / max_panel_log)));
      for (int i = 1; i < nsub; ++i) out.push_back(a * std::pow(b / a, double(i) / nsub));
    }
    out.push_back(b);
  }
  return out;
}

struct Table {
  std::vector<double> r, theta;
  std::vector<std::vector<double>> v;

  double interp(double rr, double th) const {
    if (rr < r.front() || rr > r.back() || th < theta.front() || th > theta.back()) return 0.0;
    auto cell = [](const std::vector<double>& g, double x) {
      auto it = std::upper_bound(g.begin(), g.end(), x);
      std::size_t j = it - g.begin();
      if (j == 0) j = 1;
      if (j >= g.size()) j = g.size() - 1;
      return j - 1;
    };
    std::size_t i = cell(r, rr), j = cell(theta, th);
    double tx = (rr - r[i]) / (r[i + 1] - r[i]);
    double ty = (th - theta[j]) / (theta[j + 1] - theta[j]);
    return (1 - tx) * ((1 - ty) * v[i][j] + ty * v[i][j + 1]) +
           tx * ((1 - ty) * v[i + 1][j] + ty * v[i + 1][j + 1]);
  }
};

}  // namespace

TestFunction make_gaussian_bump(double z0, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("make_gaussian_bump: sigma must be positive");
  TestFunction u;
  u.name = "bump_z" + fmt(z0) + "_s" + fmt(sigma);
  u.m = 0;
  const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
  const double invs2 = 1.0 / (sigma * sigma);
  u.value = [=](double r, double th) {
    double d2 = r * r - 2.0 * r * z0 * std::cos(th) + z0 * z0;
    return std::exp(-d2 * inv2s2);
  };
  u.d_r = [=, f = u.value](double r, double th) {
    return -f(r, th) * (r - z0 * std::cos(th)) * invs2;
  };
  u.d_theta = [=, f = u.value](double r, double th) {
    return -f(r, th) * r * z0 * std::sin(th) * invs2;
  };
  u.r_lo = std::max(0.0, std::abs(z0) - 8.5 * sigma);
  u.r_hi = std::abs(z0) + 8.5 * sigma;
  if (z0 != 0.0) u.r_knots = {std::abs(z0)};
  return u;
}

TestFunction make_ring_gaussian(double r0, double sigma, int m, int p) {
  if (!(sigma > 0.0)) throw std::invalid_argument("make_ring_gaussian: sigma must be positive");
  if (p < 0) throw std::invalid_argument("make_ring_gaussian: p must be nonnegative");
  TestFunction u;
  u.name = "ring_r" + fmt(r0) + "_m" + fmt(m) + "_p" + fmt(p);
  u.m = m;
  const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
  const double invs2 = 1.0 / (sigma * sigma);
  auto g = [=](double r) { return std::exp(-(r - r0) * (r - r0) * inv2s2); };
  u.value = [=](double r, double th) { return g(r) * std::pow(std::sin(th), p); };
  u.d_r = [=](double r, double th) {
    return -g(r) * (r - r0) * invs2 * std::pow(std::sin(th), p);
  };
  u.d_theta = [=](double r, double th) {
    if (p == 0) return 0.0;
    return g(r) * p * std::cos(th) * std::pow(std::sin(th), p - 1);
  };
  u.r_lo = std::max(0.0, r0 - 8.5 * sigma);
  u.r_hi = r0 + 8.5 * sigma;
  if (r0 > 0.0) u.r_knots = {r0};
  return u;
}

TestFunction make_log_tent(double a, double b, double ramp_lo, double ramp_hi) {
  if (!(a > 0.0 && b > a)) throw std::invalid_argument("make_log_tent: need 0 < a < b");
  if (!(ramp_lo > 0.0 && ramp_hi > 0.0))
    throw std::invalid_argument("make_log_tent: ramps must be positive");
  TestFunction u;
  u.name = "tent_a" + fmt(a) + "_b" + fmt(b) + "_T" + fmt(ramp_lo);
  if (ramp_hi != ramp_lo) u.name += "_" + fmt(ramp_hi);
  u.m = 0;
  const double ta = std::log(a), tb = std::log(b);
  const double t0 = ta - ramp_lo, t1 = tb + ramp_hi;
  auto h = [=](double t) -> double {
    if (t <= t0 || t >= t1) return 0.0;
    if (t < ta) {
      double s = (t - t0) / ramp_lo;
      return s * s * (3.0 - 2.0 * s);
    }
    if (t > tb) {
      double s = (t1 - t) / ramp_hi;
      return s * s * (3.0 - 2.0 * s);
    }
    return 1.0;
  };
  auto hp = [=](double t) -> double {
    if (t <= t0 || t >= t1 || (t >= ta && t <= tb)) return 0.0;
    if (t < ta) {
      double s = (t - t0) / ramp_lo;
      return 6.0 * s * (1.0 - s) / ramp_lo;
    }
    double s = (t1 - t) / ramp_hi;
    return -6.0 * s * (1.0 - s) / ramp_hi;
  };
  u.value = [=](double r, double) { return h(std::log(r)) / std::sqrt(r); };
  u.d_r = [=](double r, double) {
    double t = std::log(r);
    return (hp(t) - 0.5 * h(t)) / (r * std::sqrt(r));
  };
  u.d_theta = [](double, double) { return 0.0; };
  u.r_lo = std::exp(t0);
  u.r_hi = std::exp(t1);
  u.r_knots = {a, b};
  return u;
}

TestFunction make_tabulated(std::string name, std::vector<double> r_grid,
                            std::vector<double> theta_grid,
                            std::vector<std::vector<double>> values, int m, double fd_step) {
  if (r_grid.size() < 2 || theta_grid.size() < 2)
    throw std::invalid_argument("make_tabulated: need at least a 2x2 table");
  if (values.size() != r_grid.size())
    throw std::invalid_argument("make_tabulated: values rows must match r_grid");
  for (const auto& row : values)
    if (row.size() != theta_grid.size())
      throw std::invalid_argument("make_tabulated: values columns must match theta_grid");
  auto tab = std::make_shared<Table>();
  tab->r = std::move(r_grid);
  tab->theta = std::move(theta_grid);
  tab->v = std::move(values);

  TestFunction u;
  u.name = std::move(name);
  u.m = m;
  u.r_lo = tab->r.front();
  u.r_hi = tab->r.back();
  u.r_knots = tab->r;
  u.value = [tab](double r, double th) { return tab->interp(r, th); };
  u.d_r = [tab, fd_step](double r, double th) {
    return (tab->interp(r + fd_step, th) - tab->interp(r - fd_step, th)) / (2.0 * fd_step);
  };
  u.d_theta = [tab, fd_step](double r, double th) {
    return (tab->interp(r, th + fd_step) - tab->interp(r, th - fd_step)) / (2.0 * fd_step);
  };
  return u;
}

std::vector<TestFunction> default_suite() {
  std::vector<TestFunction> s;
  s.push_back(make_gaussian_bump(0.0, 1.0));
  s.push_back(make_gaussian_bump(1.5, 0.5));
  s.push_back(make_gaussian_bump(-1.5, 0.5));
  s.push_back(make_gaussian_bump(0.0, 2.0));
  s.push_back(make_gaussian_bump(0.7, 0.3));
  s.push_back(make_gaussian_bump(2.5, 0.8));
  s.push_back(make_ring_gaussian(1.0, 0.4, 0, 0));
  s.push_back(make_ring_gaussian(1.0, 0.4, 1, 1));
  s.push_back(make_ring_gaussian(2.0, 0.6, 2, 2));
  s.push_back(make_ring_gaussian(0.5, 0.2, 1, 1));
  s.push_back(make_ring_gaussian(1.5, 0.5, 0, 2));
  s.push_back(make_ring_gaussian(3.0, 1.0, 1, 1));
  s.push_back(make_log_tent(1.0, 3.0, 8.0, 8.0));
  s.push_back(make_log_tent(0.1, 10.0, 15.0, 15.0));
  s.push_back(make_log_tent(0.01, 5.0, 20.0, 20.0));
  s.push_back(make_log_tent(0.004, 20.0, 30.0, 30.0));
  s.push_back(make_log_tent(0.004, 20.0, 50.0, 50.0));
  s.push_back(make_log_tent(0.002, 50.0, 40.0, 40.0));
  s.push_back(make_log_tent(0.0005, 100.0, 60.0, 60.0));
  s.push_back(make_log_tent(0.004, 20.0, 70.0, 70.0));
  return s;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["margin"] = margin;
  j["tol"] = tol;
  j["pass"] = pass;
  j["meta"] = meta;
  return j;
}

void write_reports_jsonl(const std::vector<VerificationReport>& reports, std::ostream& out) {
  for (const auto& r : reports) out << r.to_json().dump() << "\n";
}

double angular_oracle_min_eigenvalue(const std::function<double(double)>& V, int n) {
  if (n < 8) n = 8;
  const double h = M_PI / n;
  // cell masses w_i = sin(theta_i) h at midpoints, conductances at cell walls
  std::vector<double> w(n), c(n - 1), a(n), b(n > 1 ? n - 1 : 0);
  for (int i = 0; i < n; ++i) w[i] = std::sin((i + 0.5) * h) * h;
  for (int i = 0; i + 1 < n; ++i) c[i] = std::sin((i + 1) * h) / h;
  for (int i = 0; i < n; ++i) {
    double cl = i > 0 ? c[i - 1] : 0.0;       // Neumann wall at 0
    double cr = i + 1 < n ? c[i] : 0.0;       // Neumann wall at pi
    a[i] = (cl + cr) / w[i] + V((i + 0.5) * h);
  }
  for (int i = 0; i + 1 < n; ++i) b[i] = -c[i] / std::sqrt(w[i] * w[i + 1]);

  double lo = a[0], hi = a[0];
  for (int i = 0; i < n; ++i) {
    double rad = (i > 0 ? std::abs(b[i - 1]) : 0.0) + (i + 1 < n ? std::abs(b[i]) : 0.0);
    lo = std::min(lo, a[i] - rad);
    hi = std::max(hi, a[i] + rad);
  }

  auto eigs_below = [&](double x) {
    int count = 0;
    double d = 1.0;
    for (int i = 0; i < n; ++i) {
      double off = i > 0 ? b[i - 1] * b[i - 1] : 0.0;
      d = (a[i] - x) - off / d;
      if (d == 0.0) d = -1e-300;
      if (d < 0.0) ++count;
    }
    return count;
  };

  for (int iter = 0; iter < 200 && hi - lo > 1e-11; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (eigs_below(mid) >= 1) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

VerificationReport poincare_margin(const std::function<double(double)>& f,
                                   const std::function<double(double)>& fprime, double c,
                                   int quad_order) {
  if (!(c > 0.0 && c < M_PI))
    throw std::invalid_argument("poincare_margin: c must lie in (0, pi)");
  if (std::abs(f(c)) > 1e-10)
    throw std::invalid_argument("poincare_margin: f(c) must vanish, got " + fmt(f(c)));
  const std::vector<double> breaks{0.0, c, M_PI};
  double dint = gauss_integrate_breaks(
      [&](double th) { double d = fprime(th); return d * d * std::sin(th); }, breaks, quad_order);
  double fint = gauss_integrate_breaks(
      [&](double th) { double v = f(th); return v * v * std::sin(th); }, breaks, quad_order);
  VerificationReport rep;
  rep.name = "poincare_c" + fmt(c);
  rep.lhs = k1_constant(c) * dint;
  rep.rhs = fint;
  rep.margin = rep.lhs - rep.rhs;
  rep.tol = 1e-6 * std::abs(rep.lhs);
  rep.pass = rep.margin >= -rep.tol;
  rep.meta = "k1=" + fmt(k1_constant(c));
  return rep;
}

VerificationReport radial_log_inequality_check(const RadialInterval& interval,
                                               const std::function<double(double)>& w2,
                                               const RadialTestFunction& v) {
  WeightCertificate cert = certificate_theorem3({interval}, 0);
  const double d1 = cert.constants.at("D1");
  const double m = cert.constants.at("m");
  std::vector<double> knots = v.r_knots;
  knots.push_back(interval.alpha);
  knots.push_back(interval.beta);
  knots.push_back(m);
  std::vector<double> breaks = radial_panel_breaks(v.r_lo, v.r_hi, knots, 0.5);
  double lhs = gauss_integrate_breaks(
      [&](double r) {
        double val = v.value(r), d = v.deriv(r);
        return (d * d + w2(r) * val * val) * r;
      },
      breaks, 24);
  double rhs = d1 * gauss_integrate_breaks(
                        [&](double r) {
                          double val = v.value(r);
                          double lg = std::log(r / m);
                          return val * val / (1.0 + r * r * lg * lg) * r;
                        },
                        breaks, 24);
  VerificationReport rep;
  rep.name = v.name.empty() ? "radial_log_check" : v.name;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.margin = lhs - rhs;
  rep.tol = 1e-6 * std::abs(lhs);
  rep.pass = rep.margin >= -rep.tol;
  rep.meta = "D1=" + fmt(d1) + " m=" + fmt(m);
  return rep;
}

VerificationReport form_margin(const GaugePotential& gauge, const Weight& weight,
                               const TestFunction& u, const FormMarginConfig& cfg) {
  if (!(u.r_hi > u.r_lo)) throw std::invalid_argument("form_margin: empty support");
  const std::vector<double> breaks =
      radial_panel_breaks(u.r_lo, u.r_hi, u.r_knots, cfg.max_panel_log);
  const GaussRule& rule_r = gauss_rule(cfg.r_order);
  const GaussRule& rule_t = gauss_rule(cfg.n_theta);
  const int n_phi = gauge.axisymmetric() ? 1 : std::max(1, cfg.n_phi);

  double lhs = 0.0, rhs = 0.0, kinetic0 = 0.0;
  for (std::size_t seg = 0; seg + 1 < breaks.size(); ++seg) {
    const double mid = 0.5 * (breaks[seg] + breaks[seg + 1]);
    const double half = 0.5 * (breaks[seg + 1] - breaks[seg]);
    for (std::size_t i = 0; i < rule_r.x.size(); ++i) {
      const double r = mid + half * rule_r.x[i];
      const double wr = half * rule_r.w[i];
      const double wval = cfg.weight_factor * weight.eval(r);
      for (std::size_t j = 0; j < rule_t.x.size(); ++j) {
        const double th = 0.5 * M_PI * (1.0 + rule_t.x[j]);
        const double wt = 0.5 * M_PI * rule_t.w[j];
        const double s = std::sin(th);
        const double f = u.value(r, th);
        const double fr = u.d_r(r, th);
        const double ft = u.d_theta(r, th);

        double aphi = 0.0, asq = 0.0;
        for (int k = 0; k < n_phi; ++k) {
          const Point3 p = Point3::spherical(r, th, 2.0 * M_PI * k / n_phi);
          const Vec3 A = gauge.eval(p);
          aphi += dot(A, unit_phi(p));
          asq += dot(A, A);
        }
        aphi /= n_phi;
        asq /= n_phi;

        const double mor = u.m == 0 ? 0.0 : u.m / (r * s);
        const double grad2 = fr * fr + (ft / r) * (ft / r) + mor * mor * f * f;
        const double mag = (asq - 2.0 * mor * aphi) * f * f;
        const double vol = wr * wt * r * r * s;
        kinetic0 += grad2 * vol;
        lhs += (grad2 + mag - 0.25 * f * f / (r * r)) * vol;
        rhs += wval * f * f * vol;
      }
    }
  }
  const double two_pi = 2.0 * M_PI;
  lhs *= two_pi;
  rhs *= two_pi;
  kinetic0 *= two_pi;

  VerificationReport rep;
  rep.name = u.name;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.margin = lhs - rhs;
  rep.tol = cfg.tol_rel * std::max(std::abs(lhs), 1e-12);
  rep.pass = rep.margin >= -rep.tol;
  rep.meta = "kinetic0=" + fmt(kinetic0) + " gauge=" + gauge.label();
  return rep;
}

GaugePotential gauge_from_certificate(const WeightCertificate& cert) {
  std::string kind;
  if (cert.gauge.is_object()) kind = cert.gauge.value("kind", "");
  if (kind.empty()) kind = cert.field.is_object() ? "multipolar" : "zero";
  if (kind == "zero") return GaugePotential::zero();
  if (kind == "ab") {
    double alpha = 0.0;
    if (cert.gauge.is_object() && cert.gauge.contains("alpha"))
      alpha = cert.gauge["alpha"].get<double>();
    else if (cert.constants.count("alpha"))
      alpha = cert.constants.at("alpha");
    return GaugePotential::ab_azimuthal(alpha);
  }
  if (kind == "multipolar") {
    if (!cert.field.is_object())
      throw std::invalid_argument("certificate requests a multipolar gauge but embeds no field");
    FieldSpec field = FieldSpec::parse(cert.field.dump());
    int qo = cert.gauge.is_object() ? cert.gauge.value("quad_order", 32) : 32;
    return GaugePotential::multipolar(field, qo);
  }
  throw std::invalid_argument("unknown gauge kind '" + kind + "' in certificate");
}

std::vector<VerificationReport> certificate_audit(const WeightCertificate& cert,
                                                  const std::vector<TestFunction>& suite,
                                                  const AuditOptions& opts) {
  GaugePotential gauge = gauge_from_certificate(cert);
  Weight w = cert.weight;
  w.constant *= opts.inflate;
  std::vector<VerificationReport> out;
  out.reserve(suite.size());
  for (const auto& u : suite) {
    VerificationReport rep = form_margin(gauge, w, u, opts.form);
    rep.meta += " theorem=" + cert.theorem;
    if (opts.inflate != 1.0) rep.meta += " inflate=" + fmt(opts.inflate);
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace maghardy
