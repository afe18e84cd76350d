#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "maghardy/flux.hpp"

using namespace maghardy;

TEST_CASE("uniform field: both flux routes match the closed form") {
  FieldSpec f = FieldSpec::builtin("uniform");
  GaugePotential g = GaugePotential::multipolar(f);
  std::mt19937 rng(0);
  std::uniform_real_distribution<double> ur(0.3, 3.0), ut(0.1, M_PI - 0.1);
  for (int i = 0; i < 25; ++i) {
    const double r = ur(rng), t = ut(rng);
    const double s = std::sin(t);
    const double exact = 0.5 * r * r * s * s;
    CHECK(flux_via_surface(f, r, t) == doctest::Approx(exact).epsilon(1e-12));
    CHECK(flux_via_boundary(g, r, t) == doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("flux-line field: surface flux is alpha sin(theta)") {
  const double alpha = 0.3;
  FieldSpec f = FieldSpec::builtin("ab3d", {{"alpha", alpha}});
  GaugePotential g = GaugePotential::ab_azimuthal(alpha);
  for (double t : {0.3, 0.9, M_PI / 2, 2.2, 2.8}) {
    for (double r : {0.5, 1.0, 2.7}) {
      CHECK(flux_via_surface(f, r, t) == doctest::Approx(alpha * std::sin(t)).epsilon(1e-9));
      CHECK(flux_via_boundary(g, r, t) == doctest::Approx(alpha * std::sin(t)).epsilon(1e-13));
    }
  }
}

TEST_CASE("loop field: surface and boundary routes agree") {
  FieldSpec f = FieldSpec::builtin("loop");
  GaugePotential g = GaugePotential::multipolar(f, 48);
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> ur(0.3, 2.5), ut(0.1, M_PI - 0.1);
  for (int i = 0; i < 20; ++i) {
    const double r = ur(rng), t = ut(rng);
    const double a = flux_via_surface(f, r, t);
    const double b = flux_via_boundary(g, r, t);
    CHECK(std::fabs(a - b) < 1e-8);
  }
}

TEST_CASE("the two charts describe the same flux") {
  // uniform field written in spherical physical components
  FieldSpec fs = FieldSpec::from_parts("uniform_sph", Coordinates::kSpherical,
                                       {"cos(theta)", "-sin(theta)", "0"}, {});
  FieldSpec fc = FieldSpec::builtin("uniform");
  for (double t : {0.4, 1.3, 2.6}) {
    CHECK(flux_via_surface(fs, 1.7, t) ==
          doctest::Approx(flux_via_surface(fc, 1.7, t)).epsilon(1e-12));
  }

  // purely azimuthal field: no radial flux in either chart
  FieldSpec as = FieldSpec::from_parts("azi_sph", Coordinates::kSpherical,
                                       {"0", "0", "r*sin(theta)"}, {});
  FieldSpec ac =
      FieldSpec::from_parts("azi_cart", Coordinates::kCartesian, {"-y", "x", "0"}, {});
  for (double t : {0.4, 1.3, 2.6}) {
    CHECK(std::fabs(flux_via_surface(as, 1.1, t)) < 1e-13);
    CHECK(std::fabs(flux_via_surface(ac, 1.1, t)) < 1e-13);
  }
}

TEST_CASE("boundary flux is gauge invariant") {
  FieldSpec f = FieldSpec::builtin("loop");
  GaugePotential base = GaugePotential::multipolar(f);
  GaugePotential shifted = GaugePotential::from_function(
      [&base](const Point3& p) {
        Vec3 a = base.eval(p);
        return Vec3{a.x + p.y, a.y + p.x, a.z};  // + grad(x*y)
      },
      "loop+grad(xy)");
  for (double t : {0.5, 1.5, 2.5}) {
    CHECK(flux_via_boundary(base, 1.2, t) ==
          doctest::Approx(flux_via_boundary(shifted, 1.2, t)).epsilon(1e-12));
  }
}

TEST_CASE("flux profile fills the grid and serializes as csv") {
  FieldSpec f = FieldSpec::builtin("uniform");
  GaugePotential g = GaugePotential::multipolar(f);
  auto r = linspace(0.5, 1.5, 3);
  auto t = theta_midpoint_grid(4);
  FluxProfile prof = flux_profile(f, g, r, t, FluxMethod::kBoundary);
  REQUIRE(prof.r.size() == 3);
  REQUIRE(prof.theta.size() == 4);
  REQUIRE(prof.value.size() == 3);
  REQUIRE(prof.value[0].size() == 4);
  CHECK(prof.method == "boundary");
  CHECK(prof.value[1][2] ==
        doctest::Approx(0.5 * std::pow(std::sin(t[2]), 2)).epsilon(1e-12));

  std::ostringstream out;
  write_flux_csv(prof, out);
  const std::string text = out.str();
  CHECK(text.substr(0, 13) == "r,theta,flux\n");
  CHECK(std::count(text.begin(), text.end(), '\n') == 13);
  CHECK(text.find('\r') == std::string::npos);
}

TEST_CASE("grid helpers") {
  auto lin = linspace(1.0, 2.0, 5);
  REQUIRE(lin.size() == 5);
  CHECK(lin.front() == 1.0);
  CHECK(lin.back() == 2.0);
  CHECK(lin[2] == doctest::Approx(1.5).epsilon(1e-15));

  auto log = logspace(0.01, 1.0, 5);
  REQUIRE(log.size() == 5);
  CHECK(log.front() == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(log.back() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(log[2] / log[1] == doctest::Approx(log[3] / log[2]).epsilon(1e-12));

  auto th = theta_midpoint_grid(8);
  REQUIRE(th.size() == 8);
  CHECK(th.front() == doctest::Approx(M_PI / 16).epsilon(1e-14));
  CHECK(th.back() == doctest::Approx(M_PI - M_PI / 16).epsilon(1e-14));
  for (std::size_t i = 1; i < th.size(); ++i) CHECK(th[i] > th[i - 1]);
}

TEST_CASE("method names round trip") {
  CHECK(to_string(FluxMethod::kSurface) == "surface");
  CHECK(to_string(FluxMethod::kBoundary) == "boundary");
  CHECK(flux_method_from_string("surface") == FluxMethod::kSurface);
  CHECK(flux_method_from_string("boundary") == FluxMethod::kBoundary);
  CHECK_THROWS(flux_method_from_string("sideways"));
}
