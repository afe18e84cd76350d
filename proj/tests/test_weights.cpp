#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "maghardy/weights.hpp"

using namespace maghardy;

TEST_CASE("distance to the nearest integer, squared") {
  CHECK(nearest_integer_distance_sq(0.0) == 0.0);
  CHECK(nearest_integer_distance_sq(1.0) == 0.0);
  CHECK(nearest_integer_distance_sq(0.5) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(nearest_integer_distance_sq(2.5) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(nearest_integer_distance_sq(-0.3) == doctest::Approx(0.09).epsilon(1e-14));
  CHECK(nearest_integer_distance_sq(1e9 + 0.3) == doctest::Approx(0.09).epsilon(1e-7));
}

TEST_CASE("angular potential anchors") {
  CHECK(w1_potential(0.7, M_PI / 2) == doctest::Approx(0.09).epsilon(1e-14));
  CHECK(w1_potential(0.3, M_PI / 6) == doctest::Approx(0.36).epsilon(1e-13));
  CHECK(w1_potential(2.0, 1.0) == 0.0);
}

TEST_CASE("closed-form constants") {
  CHECK(k1_constant(M_PI / 2) == doctest::Approx(M_PI * M_PI / 8).epsilon(1e-15));
  const double c = 1.0;
  const double k1 = std::max(c * c, (M_PI - c) * (M_PI - c)) / (2.0 * std::sin(c));
  CHECK(k1_constant(c) == doctest::Approx(k1).epsilon(1e-15));

  CHECK(k2_constant(M_PI / 3, 2 * M_PI / 3) == doctest::Approx(6.0 / M_PI).epsilon(1e-15));

  const double lam = lambda_constant(1.0, M_PI / 3, 2 * M_PI / 3);
  CHECK(lam == doctest::Approx(1.0 / (2.0 + M_PI * M_PI / 2.0 + 3.0 * M_PI)).epsilon(1e-15));
  CHECK(lam == doctest::Approx(0.0611262).epsilon(1e-5));

  // alpha = 2 band: M = 4 on (asin(1/4)/2, asin(1/4))
  const double t1 = std::asin(0.25);
  CHECK(lambda_constant(4.0, 0.5 * t1, t1) == doctest::Approx(2.17772e-3).epsilon(1e-4));

  // monotone in M for a fixed band
  CHECK(lambda_constant(2.0, 1.0, 2.0) > lambda_constant(1.0, 1.0, 2.0));
}

TEST_CASE("witness search on a constant row recovers the row value") {
  auto grid = theta_midpoint_grid(65);
  std::vector<double> row(grid.size(), 0.36);
  auto w = angular_witness_search(grid, row);
  REQUIRE(w.has_value());
  CHECK(w->M == doctest::Approx(0.36).epsilon(1e-15));
  CHECK(w->theta0 == grid.front());
  CHECK(w->theta1 == grid.back());
  CHECK(w->lambda ==
        doctest::Approx(lambda_constant(0.36, grid.front(), grid.back())).epsilon(1e-14));
}

TEST_CASE("witness search on a step row finds the band") {
  auto grid = theta_midpoint_grid(129);
  std::vector<double> row(grid.size(), 0.0);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (grid[j] >= M_PI / 3 && grid[j] <= 2 * M_PI / 3) row[j] = 1.0;
  }
  auto w = angular_witness_search(grid, row);
  REQUIRE(w.has_value());
  CHECK(w->M == 1.0);
  CHECK(std::fabs(w->theta0 - M_PI / 3) < M_PI / 129 + 1e-12);
  CHECK(std::fabs(w->theta1 - 2 * M_PI / 3) < M_PI / 129 + 1e-12);
  CHECK(w->lambda > 0.05);
  CHECK(w->lambda <= lambda_constant(1.0, M_PI / 3, 2 * M_PI / 3) + 1e-14);
}

TEST_CASE("witness certifies a true floor on its band") {
  auto grid = theta_midpoint_grid(129);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> row(grid.size());
    for (double& v : row) v = u(rng);
    auto w = angular_witness_search(grid, row);
    REQUIRE(w.has_value());
    CHECK(w->M > 0.0);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      if (grid[j] >= w->theta0 - 1e-15 && grid[j] <= w->theta1 + 1e-15) {
        CHECK(row[j] >= w->M - 1e-12);
      }
    }
    CHECK(w->lambda ==
          doctest::Approx(lambda_constant(w->M, w->theta0, w->theta1)).epsilon(1e-13));
  }
}

TEST_CASE("witness search rejects rows without signal") {
  auto grid = theta_midpoint_grid(65);
  std::vector<double> zeros(grid.size(), 0.0);
  CHECK_FALSE(angular_witness_search(grid, zeros).has_value());

  std::vector<double> lonely(grid.size(), 0.0);
  lonely[30] = 1.0;  // single active cell is below min_band_cells
  CHECK_FALSE(angular_witness_search(grid, lonely).has_value());
}

TEST_CASE("w2 profile divides the witness constant by r^2") {
  FluxProfile prof;
  prof.r = {1.0, 2.0};
  prof.theta = theta_midpoint_grid(65);
  prof.value.assign(2, std::vector<double>(prof.theta.size(), 0.5));
  prof.method = "surface";
  W2Profile w2 = w2_profile(prof);
  REQUIRE(w2.r.size() == 2);
  REQUIRE(w2.witness[0].has_value());
  const double lam = w2.witness[0]->lambda;
  CHECK(w2.w2[0] == doctest::Approx(lam).epsilon(1e-15));
  CHECK(w2.w2[1] == doctest::Approx(lam / 4.0).epsilon(1e-15));
}

TEST_CASE("interval detection on an inverse-square profile") {
  const double c5 = lambda_constant(1.0, M_PI / 3, 2 * M_PI / 3);
  auto r = linspace(1.0, 5.0, 401);
  std::vector<double> w2(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) w2[i] = c5 / (r[i] * r[i]);

  IntervalConfig cfg;
  cfg.level_fraction = 1.0;
  cfg.split_length = 1.0;
  auto iv = radial_interval_detection(r, w2, cfg);
  REQUIRE(iv.size() == 4);
  for (int j = 0; j < 4; ++j) {
    CHECK(iv[j].alpha == doctest::Approx(1.0 + j).epsilon(1e-12));
    CHECK(iv[j].beta == doctest::Approx(2.0 + j).epsilon(1e-12));
    CHECK(iv[j].level == doctest::Approx(c5 / ((2.0 + j) * (2.0 + j))).epsilon(1e-12));
  }
}

TEST_CASE("interval detection certifies a sampled floor") {
  auto r = linspace(0.5, 4.0, 701);
  std::vector<double> w2(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    w2[i] = std::exp(-std::pow((r[i] - 2.0) * 3.0, 2));
  }
  auto iv = radial_interval_detection(r, w2);
  REQUIRE(!iv.empty());
  for (const auto& piece : iv) {
    CHECK(piece.alpha < piece.beta);
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (r[i] >= piece.alpha - 1e-15 && r[i] <= piece.beta + 1e-15) {
        CHECK(w2[i] >= piece.level - 1e-12);
      }
    }
  }
}

TEST_CASE("interval detection respects the truncation cap") {
  auto r = linspace(1.0, 100.0, 2000);
  std::vector<double> w2(r.size(), 0.0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    // comb of disjoint bumps about 1 radius apart
    if (std::fmod(r[i], 1.0) < 0.4) w2[i] = 1.0;
  }
  IntervalConfig cfg;
  cfg.n_max = 10;
  auto iv = radial_interval_detection(r, w2, cfg);
  CHECK(iv.size() == 10);
  CHECK(iv.back().beta < 20.0);  // innermost pieces are the ones kept
}
