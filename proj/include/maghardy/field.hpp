#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maghardy/expr.hpp"
#include "maghardy/geometry.hpp"

namespace maghardy {

struct FieldError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Evaluation requested at a point inside the field's declared singular set.
struct SingularPointError : FieldError {
  using FieldError::FieldError;
};

enum class Coordinates { kCartesian, kSpherical };

// A user-described magnetic field: three component expressions in either
// chart plus named scalar parameters. Spherical components are physical
// (e_r, e_theta, e_phi) components, not coordinate derivatives.
class FieldSpec {
 public:
  // doc is a JSON object:
  //   {"name": str, "coordinates": "cartesian"|"spherical",
  //    "components": [str, str, str], "parameters": {str: number, ...},
  //    "singular_set": str?}
  static FieldSpec parse(const std::string& json_text);
  static FieldSpec from_parts(std::string name, Coordinates coords,
                              std::vector<std::string> components,
                              std::vector<std::pair<std::string, double>> parameters,
                              std::string singular_set = "none");

  // canned specs: "uniform", "ab3d" (alpha), "zero", "loop",
  // "shell" (r0, r1, k, eps). overrides replace default parameter values.
  static FieldSpec builtin(const std::string& name,
                           const std::vector<std::pair<std::string, double>>& overrides = {});

  std::string to_json() const;

  // B at p, always returned in cartesian components. Throws
  // SingularPointError on the declared singular set and FieldError if a
  // component evaluates to a non-finite value.
  Vec3 eval(const Point3& p) const;

  double radial_component(const Point3& p) const { return dot(eval(p), unit_r(p)); }

  // a copy of this field scaled by a constant factor
  FieldSpec scaled(double factor) const;

  void set_parameter(const std::string& key, double value);
  double parameter(const std::string& key) const;

  const std::string& name() const { return name_; }
  Coordinates coordinates() const { return coords_; }
  const std::vector<std::string>& component_texts() const { return component_texts_; }
  const std::string& singular_set() const { return singular_set_; }
  bool point_is_singular(const Point3& p) const;

  // True when axisymmetry is visible from the description: spherical
  // components that never read phi. Cartesian descriptions always report
  // false, even when the field happens to be axisymmetric.
  bool phi_independent() const;

  // Radii where the field changes character sharply (quadrature panel hints);
  // empty for fields without such structure.
  const std::vector<double>& radial_breakpoints() const { return radial_breakpoints_; }
  void set_radial_breakpoints(std::vector<double> b) { radial_breakpoints_ = std::move(b); }

 private:
  void compile();

  std::string name_;
  Coordinates coords_ = Coordinates::kCartesian;
  std::vector<std::string> component_texts_;
  std::vector<std::pair<std::string, double>> parameters_;  // insertion order
  std::string singular_set_ = "none";
  std::vector<double> radial_breakpoints_;

  std::vector<std::string> symbols_;  // 3 coords then parameter names
  Expression compiled_[3];
};

// Centered-difference divergence of B at p; ~0 for source-free fields away
// from singularities, ~3 for B = (x, y, z).
double divergence_residual(const FieldSpec& field, const Point3& p, double step = 1e-4);

}  // namespace maghardy
