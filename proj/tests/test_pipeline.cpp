#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "maghardy/pipeline.hpp"

using namespace maghardy;

namespace {
PipelineConfig small_config() {
  PipelineConfig cfg;
  cfg.r_min = 0.5;
  cfg.r_max = 2.0;
  cfg.n_r = 24;
  cfg.n_theta = 65;
  return cfg;
}
}  // namespace

TEST_CASE("flux-line run recovers the closed-form constant") {
  FieldSpec f = FieldSpec::builtin("ab3d", {{"alpha", 0.3}});
  PipelineResult res = run_pipeline(f, small_config());
  REQUIRE(res.certified);
  CHECK(res.certificate.theorem == "T1_log");
  // w1 is theta-independent here, so every radius carries the witness
  // M = min(alpha, 1-alpha)^2 up to grid resolution
  for (std::size_t i = 0; i < res.w2.r.size(); ++i) {
    REQUIRE(res.w2.witness[i].has_value());
    CHECK(res.w2.witness[i]->M == doctest::Approx(0.09).epsilon(1e-3));
  }
  CHECK(res.certificate.constants.at("C1") > 0.0);
  CHECK(res.certificate.field.at("name") == "ab3d");
  CHECK(res.certificate.gauge.at("kind") == "ab");
  CHECK(res.certificate.gauge.at("alpha") == 0.3);
}

TEST_CASE("zero field produces the empty certificate") {
  PipelineResult res = run_pipeline(FieldSpec::builtin("zero"), small_config());
  CHECK(res.certified);
  CHECK(res.certificate.theorem == "none");
  CHECK(res.certificate.weight.eval(1.0) == 0.0);
  CHECK(res.intervals.empty());
}

TEST_CASE("uniform field yields a log certificate on the default grid") {
  PipelineResult res = run_pipeline(FieldSpec::builtin("uniform"), small_config());
  REQUIRE(res.certified);
  CHECK(res.certificate.theorem == "T1_log");
  CHECK(res.certificate.constants.at("D1") > 0.0);
  CHECK(res.certificate.gauge.at("kind") == "multipolar");
  CHECK(res.certificate.grid.at("n_r") == 24);
  // the embedded field document round trips
  FieldSpec back = FieldSpec::parse(res.certificate.field.dump());
  CHECK(back.name() == "uniform");
}

TEST_CASE("inverse-square target populates the supremum constants") {
  PipelineConfig cfg = small_config();
  cfg.target = "T2_inverse_square";
  PipelineResult res = run_pipeline(FieldSpec::builtin("uniform"), cfg);
  REQUIRE(res.certified);
  CHECK(res.t4.accepted);
  CHECK(res.certificate.theorem == "T2_inverse_square");
  CHECK(res.certificate.constants.at("C4") == res.t4.d5);
  CHECK(res.certificate.constants.at("r0") == cfg.r_min);
  CHECK(res.certificate.weight.form == WeightForm::kInverseSquare);
}

TEST_CASE("pipeline runs are deterministic") {
  FieldSpec f = FieldSpec::builtin("loop");
  PipelineResult a = run_pipeline(f, small_config());
  PipelineResult b = run_pipeline(f, small_config());
  REQUIRE(a.certified);
  REQUIRE(b.certified);
  CHECK(a.certificate.to_json().dump() == b.certificate.to_json().dump());
}

TEST_CASE("pipeline validates its configuration") {
  PipelineConfig cfg = small_config();
  cfg.r_min = -1.0;
  CHECK_THROWS_AS(run_pipeline(FieldSpec::builtin("uniform"), cfg), std::invalid_argument);
  cfg = small_config();
  cfg.r_max = cfg.r_min;
  CHECK_THROWS_AS(run_pipeline(FieldSpec::builtin("uniform"), cfg), std::invalid_argument);
  cfg = small_config();
  cfg.target = "T9";
  CHECK_THROWS_AS(run_pipeline(FieldSpec::builtin("uniform"), cfg), std::invalid_argument);
}

TEST_CASE("gauge selection pairs fields with usable potentials") {
  std::string kind;
  double alpha = 0.0;
  FieldSpec ab = FieldSpec::builtin("ab3d", {{"alpha", 0.7}});
  GaugePotential g = select_gauge(ab, 32, &kind, &alpha);
  CHECK(kind == "ab");
  CHECK(alpha == 0.7);
  Point3 p = Point3::spherical(1.1, 0.9, 0.2);
  CHECK(norm(g.eval(p) - GaugePotential::ab_azimuthal(0.7).eval(p)) < 1e-15);

  FieldSpec loop = FieldSpec::builtin("loop");
  GaugePotential gm = select_gauge(loop, 32, &kind, &alpha);
  CHECK(kind == "multipolar");
  CHECK(alpha == 0.0);
  CHECK(norm(gm.eval(p)) > 0.0);
}

TEST_CASE("weak-field ratios stabilize") {
  FieldSpec f = FieldSpec::builtin("ab3d", {{"alpha", 1.0}});
  PipelineConfig cfg = small_config();
  auto rows = weak_field_scaling(f, {1e-2, 1e-3}, cfg);
  REQUIRE(rows.size() == 2);
  REQUIRE(rows[0].ratio.size() == static_cast<std::size_t>(cfg.n_r));
  for (std::size_t i = 0; i < rows[0].ratio.size(); ++i) {
    CHECK(rows[0].ratio[i] > 0.0);
    CHECK(rows[0].ratio[i] ==
          doctest::Approx(rows[1].ratio[i]).epsilon(0.01));
  }
}

TEST_CASE("weight profile serializes as csv") {
  PipelineResult res = run_pipeline(FieldSpec::builtin("uniform"), small_config());
  std::ostringstream out;
  write_weight_csv(res.w2, out);
  const std::string text = out.str();
  CHECK(text.substr(0, 5) == "r,w2\n");
  CHECK(std::count(text.begin(), text.end(), '\n') == 25);
}
