#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "maghardy/certificate.hpp"
#include "maghardy/flux.hpp"
#include "maghardy/weights.hpp"

namespace maghardy {

// End-to-end run: field -> gauge -> flux profile -> angular witnesses ->
// radial weight -> interval detection -> certificate.
struct PipelineConfig {
  double r_min = 0.25;
  double r_max = 3.0;
  int n_r = 96;
  int n_theta = 129;
  bool log_grid = false;
  FluxMethod method = FluxMethod::kBoundary;
  int gauge_quad_order = 32;
  QuadratureConfig quad;
  WitnessSearchConfig witness;
  IntervalConfig intervals;
  std::string target = "T1_log";  // or "T2_inverse_square"
  double r0 = 0.0;                // hypothesis radius carried into inverse-square runs; 0 = r_min
  Theorem4Options t4;
  int pick = -1;                  // interval index for the log certificate; -1 = best
};

struct PipelineResult {
  FluxProfile flux;
  W2Profile w2;
  std::vector<RadialInterval> intervals;
  WeightCertificate certificate;
  bool certified = false;
  std::string failure;  // set when no certificate could be produced
  Theorem4Result t4;    // populated for inverse-square runs
};

PipelineResult run_pipeline(const FieldSpec& field, const PipelineConfig& cfg);

// The gauge the pipeline pairs with a field: the azimuthal potential for the
// ab3d family (whose ray-transversal gauge vanishes identically), the
// multipolar gauge for everything else. kind receives "ab" or "multipolar",
// ab_alpha the azimuthal coefficient (0 outside the ab branch).
GaugePotential select_gauge(const FieldSpec& field, int quad_order, std::string* kind,
                            double* ab_alpha);

// w2 profile of alpha * B divided by alpha^2, per alpha, on cfg's radial
// grid. Flux is taken through the surface route so no gauge enters; for
// locked witness bands the ratio is exactly alpha-independent in the
// weak-field limit.
struct WeakFieldRow {
  double alpha = 0.0;
  std::vector<double> ratio;
};
std::vector<WeakFieldRow> weak_field_scaling(const FieldSpec& field,
                                             const std::vector<double>& alphas,
                                             const PipelineConfig& cfg);

// columns r,w2 with 17 significant digits
void write_weight_csv(const W2Profile& profile, std::ostream& out);

}  // namespace maghardy
