#include "maghardy/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace maghardy {

double nearest_integer_distance_sq(double phi) {
  const double lo = std::floor(phi) - 1.0;
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 4; ++k) {
    const double d = (lo + k) - phi;
    best = std::min(best, d * d);
  }
  return best;
}

double w1_potential(double flux, double theta) {
  const double s = std::sin(theta);
  if (!(s > 0.0)) throw std::invalid_argument("w1_potential: theta must lie inside (0, pi)");
  return nearest_integer_distance_sq(flux) / (s * s);
}

double k1_constant(double c) {
  if (!(c > 0.0 && c < M_PI)) throw std::invalid_argument("k1_constant: c must lie in (0, pi)");
  const double a = c * c;
  const double b = (M_PI - c) * (M_PI - c);
  return std::max(a, b) / (2.0 * std::sin(c));
}

double k2_constant(double theta0, double theta1) {
  if (!(theta1 > theta0)) throw std::invalid_argument("k2_constant: need theta1 > theta0");
  return 2.0 / (theta1 - theta0);
}

double lambda_constant(double M, double theta0, double theta1) {
  if (!(M > 0.0)) throw std::invalid_argument("lambda_constant: level must be positive");
  const double c = 0.5 * (theta0 + theta1);
  const double k1 = k1_constant(c);
  const double k2 = k2_constant(theta0, theta1);
  return M / (2.0 + 4.0 * k1 * M + 4.0 * k1 * k2);
}

std::optional<AngularWitness> angular_witness_search(const std::vector<double>& theta_grid,
                                                     const std::vector<double>& w1_row,
                                                     const WitnessSearchConfig& cfg) {
  const std::size_t n = theta_grid.size();
  if (w1_row.size() != n) {
    throw std::invalid_argument("angular_witness_search: grid and row sizes differ");
  }
  std::vector<double> positive;
  positive.reserve(n);
  for (double v : w1_row) {
    if (std::isfinite(v) && v > 0.0) positive.push_back(v);
  }
  if (positive.empty()) return std::nullopt;
  std::sort(positive.begin(), positive.end());
  positive.erase(std::unique(positive.begin(), positive.end()), positive.end());

  // candidate levels: evenly spaced quantiles of the distinct positive values,
  // always including the smallest (so a constant row is matched exactly)
  std::vector<double> levels;
  const int want = std::max(2, cfg.levels);
  for (int i = 0; i < want; ++i) {
    const std::size_t idx =
        static_cast<std::size_t>(std::llround(static_cast<double>(i) * (positive.size() - 1) /
                                              static_cast<double>(want - 1)));
    levels.push_back(positive[idx]);
  }
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::optional<AngularWitness> best;
  const int min_cells = std::max(2, cfg.min_band_cells);
  for (double M : levels) {
    std::size_t i = 0;
    while (i < n) {
      if (!(std::isfinite(w1_row[i]) && w1_row[i] >= M)) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j + 1 < n && std::isfinite(w1_row[j + 1]) && w1_row[j + 1] >= M) ++j;
      const int cells = static_cast<int>(j - i + 1);
      if (cells >= min_cells) {
        AngularWitness cand;
        cand.M = M;
        cand.theta0 = theta_grid[i];
        cand.theta1 = theta_grid[j];
        cand.k1 = k1_constant(0.5 * (cand.theta0 + cand.theta1));
        cand.k2 = k2_constant(cand.theta0, cand.theta1);
        cand.lambda = lambda_constant(M, cand.theta0, cand.theta1);
        const bool better =
            !best || cand.lambda > best->lambda ||
            (cand.lambda == best->lambda &&
             (cand.theta0 < best->theta0 ||
              (cand.theta0 == best->theta0 && cand.theta1 < best->theta1)));
        if (better) best = cand;
      }
      i = j + 1;
    }
  }
  return best;
}

W2Profile w2_profile(const FluxProfile& flux, const WitnessSearchConfig& cfg) {
  W2Profile out;
  out.r = flux.r;
  out.w2.assign(flux.r.size(), 0.0);
  out.witness.assign(flux.r.size(), std::nullopt);
  std::vector<double> row(flux.theta.size());
  for (std::size_t i = 0; i < flux.r.size(); ++i) {
    for (std::size_t j = 0; j < flux.theta.size(); ++j) {
      row[j] = w1_potential(flux.value[i][j], flux.theta[j]);
    }
    out.witness[i] = angular_witness_search(flux.theta, row, cfg);
    if (out.witness[i]) out.w2[i] = out.witness[i]->lambda / (flux.r[i] * flux.r[i]);
  }
  return out;
}

std::vector<RadialInterval> radial_interval_detection(const std::vector<double>& r,
                                                      const std::vector<double>& w2,
                                                      const IntervalConfig& cfg) {
  const std::size_t n = r.size();
  if (w2.size() != n) throw std::invalid_argument("radial_interval_detection: size mismatch");
  if (!(cfg.level_fraction > 0.0 && cfg.level_fraction <= 1.0)) {
    throw std::invalid_argument("radial_interval_detection: level_fraction must lie in (0, 1]");
  }
  if (!(cfg.split_length > 0.0)) {
    throw std::invalid_argument("radial_interval_detection: split_length must be positive");
  }
  double global_max = 0.0;
  for (double v : w2) {
    if (std::isfinite(v)) global_max = std::max(global_max, v);
  }
  if (!(global_max > cfg.floor_abs)) return {};
  const double floor_level = std::max(cfg.floor_abs, cfg.floor_fraction * global_max);

  std::vector<RadialInterval> out;
  std::size_t i = 0;
  while (i < n && static_cast<int>(out.size()) < cfg.n_max) {
    if (!(std::isfinite(w2[i]) && w2[i] >= floor_level)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && std::isfinite(w2[j + 1]) && w2[j + 1] >= floor_level) ++j;
    if (j > i) {
      const double lo = r[i];
      const double hi = r[j];
      const int pieces = std::max(1, static_cast<int>(std::ceil((hi - lo) / cfg.split_length)));
      for (int p = 0; p < pieces && static_cast<int>(out.size()) < cfg.n_max; ++p) {
        const double a = lo + (hi - lo) * p / pieces;
        const double b = lo + (hi - lo) * (p + 1) / pieces;
        double piece_min = std::numeric_limits<double>::infinity();
        for (std::size_t k = i; k <= j; ++k) {
          if (r[k] >= a - 1e-15 * (1.0 + std::abs(a)) &&
              r[k] <= b + 1e-15 * (1.0 + std::abs(b))) {
            piece_min = std::min(piece_min, w2[k]);
          }
        }
        if (std::isfinite(piece_min)) {
          out.push_back({a, b, cfg.level_fraction * piece_min});
        }
      }
    }
    i = j + 1;
  }
  return out;
}

}  // namespace maghardy
