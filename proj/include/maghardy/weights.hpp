#pragma once

#include <optional>
#include <vector>

#include "maghardy/flux.hpp"

namespace maghardy {

// min over integers k of (k - phi)^2; the minimizer is scanned over the
// window [floor(phi)-1, ceil(phi)+1] so huge fluxes stay exact.
double nearest_integer_distance_sq(double phi);

// angular potential (dist of flux to Z)^2 / sin^2(theta)
double w1_potential(double flux, double theta);

// Poincare constant for functions vanishing at c in (0, pi):
// int f^2 sin <= k1(c) int f'^2 sin whenever f(c) = 0.
double k1_constant(double c);

// boundary-layer constant for a band (theta0, theta1)
double k2_constant(double theta0, double theta1);

// one-dimensional lower-bound constant fed by a band where the angular
// potential stays above M
double lambda_constant(double M, double theta0, double theta1);

struct AngularWitness {
  double M = 0.0;       // certified floor of w1 on the band
  double theta0 = 0.0;  // band start
  double theta1 = 0.0;  // band end
  double lambda = 0.0;  // resulting constant
  double k1 = 0.0;
  double k2 = 0.0;
};

struct WitnessSearchConfig {
  int levels = 24;          // size of the candidate level sweep
  int min_band_cells = 2;   // bands narrower than this many grid cells are noise
};

// Scan one w1 row (sampled on theta_grid) for the band/level pair maximizing
// lambda. Candidate levels are row quantiles plus the exact row minimum; for
// each level the longest run of cells at or above it is the band. Returns
// nothing when the row never rises above zero.
std::optional<AngularWitness> angular_witness_search(const std::vector<double>& theta_grid,
                                                     const std::vector<double>& w1_row,
                                                     const WitnessSearchConfig& cfg = {});

struct W2Profile {
  std::vector<double> r;
  std::vector<double> w2;  // radial weight: witness lambda / r^2, or 0
  std::vector<std::optional<AngularWitness>> witness;
};

W2Profile w2_profile(const FluxProfile& flux, const WitnessSearchConfig& cfg = {});

struct RadialInterval {
  double alpha = 0.0;  // left endpoint
  double beta = 0.0;   // right endpoint
  double level = 0.0;  // certified floor of w2 on the interval
};

struct IntervalConfig {
  double level_fraction = 0.9;  // level = fraction * min over the piece
  double floor_fraction = 1e-9; // cells below fraction * global max are inactive
  double floor_abs = 1e-300;    // and anything at or below this is always inactive
  double split_length = 1.0;    // runs are cut into pieces no longer than this
  int n_max = 64;               // keep the innermost n_max pieces
};

// Detect radial intervals where the sampled w2 holds a level. Each maximal
// active run is split into pieces of bounded length and each piece certifies
// level_fraction times its own sampled minimum.
std::vector<RadialInterval> radial_interval_detection(const std::vector<double>& r,
                                                      const std::vector<double>& w2,
                                                      const IntervalConfig& cfg = {});

}  // namespace maghardy
