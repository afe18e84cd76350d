#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "maghardy/weights.hpp"

namespace maghardy {

enum class WeightForm { kZero, kLog, kInverseSquare, kHardyScaled };

std::string to_string(WeightForm f);
WeightForm weight_form_from_string(const std::string& s);

// Evaluable radial weight. Forms:
//   zero            w(r) = 0
//   log             w(r) = constant / (1 + r^2 log^2(r / scale))
//   inverse_square  w(r) = constant / (1 + r^2)
//   hardy_scaled    w(r) = constant / r^2
struct Weight {
  WeightForm form = WeightForm::kZero;
  double constant = 0.0;
  double scale = 1.0;

  double eval(double r) const;
  nlohmann::json to_json() const;
  static Weight from_json(const nlohmann::json& j);
};

struct WeightCertificate {
  std::string theorem;  // T1_log, T2_inverse_square, T3_log, T4_inverse_square, AB_closed_form, none
  std::map<std::string, double> constants;
  Weight weight;
  std::vector<std::string> audit;
  nlohmann::json grid = nlohmann::json();   // run configuration echo, may be null
  nlohmann::json field = nlohmann::json();  // embedded field document, may be null
  nlohmann::json gauge = nlohmann::json();  // gauge descriptor, may be null

  nlohmann::json to_json() const;
  static WeightCertificate from_json(const nlohmann::json& j);
};

// Log-weight certificate from one detected interval. pick < 0 selects the
// interval maximizing the resulting constant D1; otherwise pick is an index
// into the interval list. For the chosen interval (alpha, beta, L):
//   m  = (alpha + beta) / 2
//   n1 = max(4, m^2 / 2)
//   n2 = 2 / (beta - alpha)
//   D1 = L / (4 n1 L + 4 n1 n2 + 2)
// and the weight is D1 / (1 + r^2 log^2(r/m)).
WeightCertificate certificate_theorem3(const std::vector<RadialInterval>& intervals,
                                       int pick = -1);

struct Theorem4Options {
  double cap = 1e6;  // accept only if D2, D3, D4 all stay at or below this
};

struct Theorem4Result {
  bool accepted = false;
  WeightCertificate certificate;   // populated when accepted
  std::string rejected_condition;  // "condition 1" (D2), "condition 2" (D3), "condition 3" (D4)
  std::string detail;
  double d2 = 0.0, d3 = 0.0, d4 = 0.0, d5 = 0.0;
};

// Inverse-square certificate from the whole interval family, with the
// convention m_{-1} = 0 and suprema taken over the truncated list:
//   D2 = max_j 1 / (L_j (1 + dist(0,I_j)^2))
//   D3 = max_j (m_j - m_{j-1}) / (1 + dist(0,I_j)^2)
//   D4 = max_j max{ (m_j - m_{j-1})/(1+dist(0,I_j)^2),
//                   (m_{j+1} - m_j)/(1+dist(0,I_{j+1})^2) } / (L_j |I_j|^2)
//   D5 = 1 / (2 max{D3, max{D2, D4}})
// Rejects, naming the violated condition, when any of D2/D3/D4 exceeds the cap.
Theorem4Result certificate_theorem4(const std::vector<RadialInterval>& intervals,
                                    const Theorem4Options& opt = {});

// Closed forms for the azimuthal flux-line family with parameter alpha > 0:
// C = min(alpha, 1-alpha)^2 for alpha in (0,1), otherwise
// C = lambda(alpha^2, arcsin(1/(2 alpha))/2, arcsin(1/(2 alpha))).
// The improved constant 1/4 + C is reported alongside.
WeightCertificate ab_constants(double alpha);

// B = 0: no flux, no weight.
WeightCertificate zero_field_certificate();

}  // namespace maghardy
