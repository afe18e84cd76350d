#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "maghardy/verify.hpp"

using namespace maghardy;

TEST_CASE("angular oracle reproduces constant potentials exactly") {
  CHECK(std::fabs(angular_oracle_min_eigenvalue([](double) { return 0.0; }, 400)) < 1e-9);
  CHECK(angular_oracle_min_eigenvalue([](double) { return 2.5; }, 400) ==
        doctest::Approx(2.5).epsilon(1e-10));
  CHECK(angular_oracle_min_eigenvalue([](double) { return 0.0; }, 2000) ==
        doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("angular oracle dominates the band lower bound") {
  auto step = [](double t) { return (t >= M_PI / 3 && t <= 2 * M_PI / 3) ? 1.0 : 0.0; };
  const double oracle = angular_oracle_min_eigenvalue(step, 2000);
  const double bound = lambda_constant(1.0, M_PI / 3, 2 * M_PI / 3);
  CHECK(oracle >= bound);
  CHECK(oracle > 0.3);   // the true ground state sits far above the guaranteed floor
  CHECK(oracle < 0.5);   // and below the mean-field value int V sin / int sin
}

TEST_CASE("angular oracle is monotone in the potential") {
  auto v1 = [](double t) { return std::sin(t); };
  auto v2 = [](double t) { return std::sin(t) + 0.2; };
  const double a = angular_oracle_min_eigenvalue(v1, 800);
  const double b = angular_oracle_min_eigenvalue(v2, 800);
  CHECK(b >= a + 0.19);
  CHECK(b <= a + 0.21);
}

TEST_CASE("poincare margin on the linear anchor") {
  auto f = [](double t) { return t - M_PI / 2; };
  auto fp = [](double) { return 1.0; };
  VerificationReport rep = poincare_margin(f, fp, M_PI / 2);
  CHECK(rep.pass);
  CHECK(rep.lhs == doctest::Approx(M_PI * M_PI / 4).epsilon(1e-12));
  CHECK(rep.rhs == doctest::Approx(M_PI * M_PI / 2 - 4.0).epsilon(1e-10));
  // raw integral ratio int f^2 sin / int f'^2 sin, just under half of k1
  const double k1 = k1_constant(M_PI / 2);
  CHECK(rep.rhs * k1 / rep.lhs == doctest::Approx(0.4674).epsilon(1e-3));
  CHECK(rep.rhs * k1 / rep.lhs < k1);
}

TEST_CASE("poincare margin holds for random smooth functions") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> uc(0.3, M_PI - 0.3), ua(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double c = uc(rng);
    double a1 = ua(rng), a2 = ua(rng), b1 = ua(rng);
    auto g = [=](double t) { return a1 * std::sin(t) + a2 * std::sin(2 * t) + b1 * std::cos(t); };
    auto gp = [=](double t) {
      return a1 * std::cos(t) + 2 * a2 * std::cos(2 * t) - b1 * std::sin(t);
    };
    auto f = [=](double t) { return g(t) - g(c); };
    VerificationReport rep = poincare_margin(f, gp, c);
    CHECK(rep.pass);
  }
}

TEST_CASE("poincare margin rejects functions that miss the vanishing condition") {
  auto f = [](double t) { return t; };
  auto fp = [](double) { return 1.0; };
  CHECK_THROWS_AS(poincare_margin(f, fp, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(poincare_margin(f, fp, -0.5), std::invalid_argument);
}

TEST_CASE("reduced radial inequality on and off the active interval") {
  RadialInterval iv{1.0, 2.0, 0.1};
  auto w2 = [](double r) { return (r >= 1.0 && r <= 2.0) ? 0.1 : 0.0; };

  RadialTestFunction centered;
  centered.name = "centered";
  centered.r_lo = 0.1;
  centered.r_hi = 4.0;
  centered.value = [](double r) { return std::exp(-8.0 * (r - 1.5) * (r - 1.5)); };
  centered.deriv = [](double r) {
    return -16.0 * (r - 1.5) * std::exp(-8.0 * (r - 1.5) * (r - 1.5));
  };
  VerificationReport a = radial_log_inequality_check(iv, w2, centered);
  CHECK(a.pass);
  CHECK(a.meta.find("D1") != std::string::npos);

  RadialTestFunction far;
  far.name = "far";
  far.r_lo = 4.0;
  far.r_hi = 8.0;
  far.value = [](double r) { return std::exp(-4.0 * (r - 6.0) * (r - 6.0)); };
  far.deriv = [](double r) {
    return -8.0 * (r - 6.0) * std::exp(-4.0 * (r - 6.0) * (r - 6.0));
  };
  VerificationReport b = radial_log_inequality_check(iv, w2, far);
  CHECK(b.pass);
  CHECK(b.lhs > b.rhs);
}

TEST_CASE("form margin of the axis gaussian against zero field") {
  TestFunction u = make_gaussian_bump(0.0, 1.0);
  VerificationReport rep = form_margin(GaugePotential::zero(), Weight{}, u);
  CHECK(rep.pass);
  // int |grad u|^2 - (1/4) int u^2/r^2 = pi^(3/2) for exp(-r^2/2)
  CHECK(rep.lhs == doctest::Approx(std::pow(M_PI, 1.5)).epsilon(1e-8));
  CHECK(rep.rhs == 0.0);
}

TEST_CASE("form margin flags weights that are too large") {
  TestFunction u = make_gaussian_bump(0.0, 1.0);
  // for this u the Hardy margin equals half the scaled-weight mass at C = 1/2
  VerificationReport ok =
      form_margin(GaugePotential::zero(), Weight{WeightForm::kHardyScaled, 0.25, 1.0}, u);
  CHECK(ok.pass);
  CHECK(ok.margin == doctest::Approx(0.5 * std::pow(M_PI, 1.5)).epsilon(1e-7));

  VerificationReport bad =
      form_margin(GaugePotential::zero(), Weight{WeightForm::kHardyScaled, 0.6, 1.0}, u);
  CHECK_FALSE(bad.pass);
  CHECK(bad.margin < 0.0);
}

TEST_CASE("log tents cost exactly their ramps") {
  TestFunction tent = make_log_tent(1.0, 3.0, 8.0, 8.0);
  VerificationReport rep = form_margin(GaugePotential::zero(), Weight{}, tent);
  CHECK(rep.pass);
  // kinetic minus Hardy = 4 pi * (2 * 1.2 / T) for two smoothstep ramps
  CHECK(rep.lhs == doctest::Approx(4.0 * M_PI * 2.4 / 8.0).epsilon(1e-6));
}

TEST_CASE("magnetic kinetic energy dominates its field-free version") {
  GaugePotential a = GaugePotential::multipolar(FieldSpec::builtin("uniform"));
  GaugePotential none = GaugePotential::zero();
  for (TestFunction u : {make_gaussian_bump(0.0, 1.0), make_gaussian_bump(1.5, 0.5),
                         make_ring_gaussian(1.0, 0.4, 0, 0)}) {
    VerificationReport with_field = form_margin(a, Weight{}, u);
    VerificationReport without = form_margin(none, Weight{}, u);
    CHECK(with_field.lhs >= without.lhs - 1e-10 * std::fabs(without.lhs));
  }
}

TEST_CASE("azimuthal harmonics pay the centrifugal price") {
  TestFunction flat = make_ring_gaussian(1.5, 0.4, 0, 1);
  TestFunction winding = make_ring_gaussian(1.5, 0.4, 1, 1);
  GaugePotential none = GaugePotential::zero();
  VerificationReport f0 = form_margin(none, Weight{}, flat);
  VerificationReport f1 = form_margin(none, Weight{}, winding);
  CHECK(f1.lhs > f0.lhs);
}

TEST_CASE("default suite is deterministic and well formed") {
  auto suite = default_suite();
  REQUIRE(suite.size() == 20);
  for (std::size_t i = 0; i < suite.size(); ++i) {
    CHECK(!suite[i].name.empty());
    CHECK(suite[i].r_lo < suite[i].r_hi);
    for (std::size_t j = i + 1; j < suite.size(); ++j) {
      CHECK(suite[i].name != suite[j].name);
    }
  }
  auto again = default_suite();
  CHECK(again[7].name == suite[7].name);
}

TEST_CASE("tabulated functions interpolate their samples") {
  auto r = linspace(0.5, 2.5, 41);
  auto t = linspace(0.2, M_PI - 0.2, 33);
  std::vector<std::vector<double>> vals(r.size(), std::vector<double>(t.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = 0; j < t.size(); ++j) {
      vals[i][j] = std::exp(-(r[i] - 1.5) * (r[i] - 1.5)) * std::sin(t[j]);
    }
  }
  TestFunction u = make_tabulated("tab", r, t, vals, 0);
  CHECK(u.value(r[10], t[7]) == doctest::Approx(vals[10][7]).epsilon(1e-12));
  const double mid_r = 0.5 * (r[4] + r[5]);
  CHECK(u.value(mid_r, t[7]) ==
        doctest::Approx(0.5 * (vals[4][7] + vals[5][7])).epsilon(1e-12));
  CHECK(u.value(3.5, 1.0) == 0.0);

  VerificationReport rep = form_margin(GaugePotential::zero(), Weight{}, u);
  CHECK(rep.lhs > 0.0);
}

TEST_CASE("certificate audit round trips gauges from the document") {
  WeightCertificate ab = ab_constants(0.3);
  GaugePotential g = gauge_from_certificate(ab);
  Point3 p = Point3::spherical(1.2, 0.8, 0.3);
  Vec3 got = g.eval(p), want = GaugePotential::ab_azimuthal(0.3).eval(p);
  CHECK(norm(got - want) < 1e-15);

  WeightCertificate mp;
  mp.field = nlohmann::json::parse(FieldSpec::builtin("uniform").to_json());
  mp.gauge = nlohmann::json{{"kind", "multipolar"}, {"quad_order", 32}};
  GaugePotential gm = gauge_from_certificate(mp);
  Vec3 a = gm.eval(p);
  CHECK(a.x == doctest::Approx(-0.5 * p.y).epsilon(1e-12));

  WeightCertificate bad;
  bad.gauge = nlohmann::json{{"kind", "wormhole"}};
  CHECK_THROWS_AS(gauge_from_certificate(bad), std::invalid_argument);
}

TEST_CASE("auditing the flux-line certificate") {
  WeightCertificate cert = ab_constants(0.5);
  auto suite = default_suite();
  suite.resize(6);

  auto reports = certificate_audit(cert, suite);
  REQUIRE(reports.size() == 6);
  for (const auto& rep : reports) CHECK(rep.pass);

  AuditOptions inflate;
  inflate.inflate = 100.0;
  auto broken = certificate_audit(cert, suite, inflate);
  int failures = 0;
  for (const auto& rep : broken) failures += rep.pass ? 0 : 1;
  CHECK(failures >= 1);
}

TEST_CASE("auditing the zero certificate never fails") {
  WeightCertificate cert = zero_field_certificate();
  auto suite = default_suite();
  suite.resize(4);
  for (const auto& rep : certificate_audit(cert, suite)) {
    CHECK(rep.pass);
    CHECK(rep.rhs == 0.0);
  }
}

TEST_CASE("reports serialize one json object per line") {
  VerificationReport rep;
  rep.name = "demo";
  rep.lhs = 1.5;
  rep.rhs = 0.5;
  rep.margin = 1.0;
  rep.tol = 1e-6;
  rep.pass = true;
  std::ostringstream out;
  write_reports_jsonl({rep, rep}, out);
  std::istringstream in(out.str());
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line);
    CHECK(j.at("name") == "demo");
    CHECK(j.at("pass") == true);
    CHECK(j.at("margin") == 1.0);
    ++lines;
  }
  CHECK(lines == 2);
}
