#pragma once

#include <functional>
#include <memory>
#include <string>

#include "maghardy/field.hpp"
#include "maghardy/geometry.hpp"

namespace maghardy {

// A vector potential. The canonical construction is multipolar(): the ray
// integral A(x) = int_0^1 B(sx) x (sx) ds, which satisfies x . A(x) = 0
// identically and curl A = B for fields that are regular at the origin.
class GaugePotential {
 public:
  using Eval = std::function<Vec3(const Point3&)>;

  GaugePotential() = default;

  static GaugePotential multipolar(const FieldSpec& field, int quad_order = 32);

  // A = (alpha / r) e_phi, the transversal potential whose curl is
  // alpha cos(theta) / (r^2 sin theta) e_r. Singular on the x3 axis.
  static GaugePotential ab_azimuthal(double alpha);

  static GaugePotential zero();

  // arbitrary evaluator, for gauge-perturbation experiments
  static GaugePotential from_function(Eval f, std::string label, bool axisymmetric = false);

  Vec3 eval(const Point3& p) const { return eval_(p); }

  // True when the potential is known to commute with rotations about the x3
  // axis, so ring averages need a single azimuthal sample. Set from the field
  // description for multipolar(); conservative false for unknown evaluators.
  bool axisymmetric() const { return axisymmetric_; }

  // |x . A| / (1 + |x||A|); ~1e-15 for transversal gauges
  double transversality_residual(const Point3& p) const;

  const std::string& label() const { return label_; }

 private:
  Eval eval_;
  std::string label_ = "empty";
  bool axisymmetric_ = false;
};

// second-order centered-difference curl
Vec3 curl_fd(const GaugePotential& gauge, const Point3& p, double step);

// |curl_h A - B| at p; halving step should shrink this about 4x for C^3 fields
double curl_residual(const GaugePotential& gauge, const FieldSpec& field, const Point3& p,
                     double step = 1e-3);

}  // namespace maghardy
