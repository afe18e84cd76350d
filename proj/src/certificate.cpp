#include "maghardy/certificate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace maghardy {

std::string to_string(WeightForm f) {
  switch (f) {
    case WeightForm::kZero: return "zero";
    case WeightForm::kLog: return "log";
    case WeightForm::kInverseSquare: return "inverse_square";
    case WeightForm::kHardyScaled: return "hardy_scaled";
  }
  return "zero";
}

WeightForm weight_form_from_string(const std::string& s) {
  if (s == "zero") return WeightForm::kZero;
  if (s == "log") return WeightForm::kLog;
  if (s == "inverse_square") return WeightForm::kInverseSquare;
  if (s == "hardy_scaled") return WeightForm::kHardyScaled;
  throw std::invalid_argument("unknown weight form '" + s + "'");
}

double Weight::eval(double r) const {
  switch (form) {
    case WeightForm::kZero:
      return 0.0;
    case WeightForm::kLog: {
      const double lg = std::log(r / scale);
      return constant / (1.0 + r * r * lg * lg);
    }
    case WeightForm::kInverseSquare:
      return constant / (1.0 + r * r);
    case WeightForm::kHardyScaled:
      return constant / (r * r);
  }
  return 0.0;
}

nlohmann::json Weight::to_json() const {
  nlohmann::json params;
  params["constant"] = constant;
  if (form == WeightForm::kLog) params["scale"] = scale;
  return nlohmann::json{{"form", to_string(form)}, {"params", params}};
}

Weight Weight::from_json(const nlohmann::json& j) {
  Weight w;
  w.form = weight_form_from_string(j.at("form").get<std::string>());
  const auto& params = j.at("params");
  w.constant = params.value("constant", 0.0);
  w.scale = params.value("scale", 1.0);
  return w;
}

nlohmann::json WeightCertificate::to_json() const {
  nlohmann::json j;
  j["theorem"] = theorem;
  j["constants"] = constants;
  j["weight"] = weight.to_json();
  j["audit"] = audit;
  j["grid"] = grid;
  j["field"] = field;
  j["gauge"] = gauge;
  return j;
}

WeightCertificate WeightCertificate::from_json(const nlohmann::json& j) {
  WeightCertificate c;
  c.theorem = j.at("theorem").get<std::string>();
  for (auto it = j.at("constants").begin(); it != j.at("constants").end(); ++it) {
    c.constants[it.key()] = it.value().get<double>();
  }
  c.weight = Weight::from_json(j.at("weight"));
  for (const auto& note : j.value("audit", nlohmann::json::array())) {
    c.audit.push_back(note.get<std::string>());
  }
  if (j.contains("grid")) c.grid = j["grid"];
  if (j.contains("field")) c.field = j["field"];
  if (j.contains("gauge")) c.gauge = j["gauge"];
  return c;
}

namespace {

struct T3Numbers {
  double m, n1, n2, d1;
};

T3Numbers theorem3_numbers(const RadialInterval& iv) {
  T3Numbers n;
  n.m = 0.5 * (iv.alpha + iv.beta);
  n.n1 = std::max(4.0, 0.5 * n.m * n.m);
  n.n2 = 2.0 / (iv.beta - iv.alpha);
  n.d1 = iv.level / (4.0 * n.n1 * iv.level + 4.0 * n.n1 * n.n2 + 2.0);
  return n;
}

}  // namespace

WeightCertificate certificate_theorem3(const std::vector<RadialInterval>& intervals, int pick) {
  if (intervals.empty()) {
    throw std::invalid_argument("certificate_theorem3: no radial intervals");
  }
  int best = 0;
  if (pick >= 0) {
    if (pick >= static_cast<int>(intervals.size())) {
      throw std::invalid_argument("certificate_theorem3: pick out of range");
    }
    best = pick;
  } else {
    double best_d1 = -1.0;
    for (std::size_t j = 0; j < intervals.size(); ++j) {
      const double d1 = theorem3_numbers(intervals[j]).d1;
      if (d1 > best_d1) {
        best_d1 = d1;
        best = static_cast<int>(j);
      }
    }
  }
  const RadialInterval& iv = intervals[best];
  if (!(iv.level > 0.0 && iv.beta > iv.alpha && iv.alpha > 0.0)) {
    throw std::invalid_argument("certificate_theorem3: degenerate interval");
  }
  const T3Numbers n = theorem3_numbers(iv);

  WeightCertificate cert;
  cert.theorem = "T3_log";
  cert.constants["D1"] = n.d1;
  cert.constants["L"] = iv.level;
  cert.constants["alpha"] = iv.alpha;
  cert.constants["beta"] = iv.beta;
  cert.constants["m"] = n.m;
  cert.constants["n1"] = n.n1;
  cert.constants["n2"] = n.n2;
  cert.weight = Weight{WeightForm::kLog, n.d1, n.m};
  if (pick < 0 && intervals.size() > 1) {
    cert.audit.push_back("weight center chosen from " + std::to_string(intervals.size()) +
                         " candidate intervals by maximizing D1; the statement leaves the index free");
  }
  return cert;
}

Theorem4Result certificate_theorem4(const std::vector<RadialInterval>& intervals,
                                    const Theorem4Options& opt) {
  if (intervals.empty()) {
    throw std::invalid_argument("certificate_theorem4: no radial intervals");
  }
  const std::size_t n = intervals.size();
  std::vector<double> m(n), dist(n);
  for (std::size_t j = 0; j < n; ++j) {
    const RadialInterval& iv = intervals[j];
    if (!(iv.level > 0.0 && iv.beta > iv.alpha && iv.alpha > 0.0)) {
      throw std::invalid_argument("certificate_theorem4: degenerate interval");
    }
    if (j > 0 && intervals[j].alpha < intervals[j - 1].beta) {
      throw std::invalid_argument("certificate_theorem4: intervals overlap or are unsorted");
    }
    m[j] = 0.5 * (iv.alpha + iv.beta);
    dist[j] = iv.alpha;  // intervals sit at positive radii, so dist(0, I_j) = alpha_j
  }

  Theorem4Result out;
  std::size_t arg2 = 0, arg3 = 0, arg4 = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const double denom = 1.0 + dist[j] * dist[j];
    const double prev_m = (j == 0) ? 0.0 : m[j - 1];
    const double back = (m[j] - prev_m) / denom;

    const double v2 = 1.0 / (intervals[j].level * denom);
    if (v2 > out.d2) { out.d2 = v2; arg2 = j; }
    if (back > out.d3) { out.d3 = back; arg3 = j; }

    double pair_max = back;
    if (j + 1 < n) {
      const double fwd = (m[j + 1] - m[j]) / (1.0 + dist[j + 1] * dist[j + 1]);
      pair_max = std::max(pair_max, fwd);
    }
    const double len = intervals[j].beta - intervals[j].alpha;
    const double v4 = pair_max / (intervals[j].level * len * len);
    if (v4 > out.d4) { out.d4 = v4; arg4 = j; }
  }
  out.d5 = 1.0 / (2.0 * std::max(out.d3, std::max(out.d2, out.d4)));

  auto reject = [&](const char* cond, const char* name, double value, std::size_t j) {
    out.accepted = false;
    out.rejected_condition = cond;
    out.detail = std::string(name) + " = " + std::to_string(value) + " exceeds cap " +
                 std::to_string(opt.cap) + " at interval index " + std::to_string(j) +
                 "; the interval family does not satisfy " + cond;
  };
  if (out.d2 > opt.cap) {
    reject("condition 1", "D2", out.d2, arg2);
    return out;
  }
  if (out.d3 > opt.cap) {
    reject("condition 2", "D3", out.d3, arg3);
    return out;
  }
  if (out.d4 > opt.cap) {
    reject("condition 3", "D4", out.d4, arg4);
    return out;
  }

  out.accepted = true;
  WeightCertificate& cert = out.certificate;
  cert.theorem = "T4_inverse_square";
  cert.constants["D2"] = out.d2;
  cert.constants["D3"] = out.d3;
  cert.constants["D4"] = out.d4;
  cert.constants["D5"] = out.d5;
  cert.weight = Weight{WeightForm::kInverseSquare, out.d5, 1.0};
  cert.audit.push_back("suprema audited over the truncated list of " + std::to_string(n) +
                       " intervals; the conditions are uniform in j and cannot be certified "
                       "beyond the audited range");
  return out;
}

WeightCertificate ab_constants(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("ab_constants: alpha must be positive");
  WeightCertificate cert;
  cert.theorem = "AB_closed_form";
  cert.constants["alpha"] = alpha;
  double C;
  if (alpha < 1.0) {
    const double d = std::min(alpha, 1.0 - alpha);
    C = d * d;
  } else {
    const double theta1 = std::asin(1.0 / (2.0 * alpha));
    const double theta0 = 0.5 * theta1;
    const double M = alpha * alpha;
    C = lambda_constant(M, theta0, theta1);
    cert.constants["M"] = M;
    cert.constants["theta0"] = theta0;
    cert.constants["theta1"] = theta1;
    cert.constants["k1"] = k1_constant(0.5 * (theta0 + theta1));
    cert.constants["k2"] = k2_constant(theta0, theta1);
    cert.constants["lambda"] = C;
  }
  cert.constants["C"] = C;
  cert.constants["hardy_improved"] = 0.25 + C;
  cert.weight = Weight{WeightForm::kHardyScaled, C, 1.0};
  cert.gauge = nlohmann::json{{"kind", "ab"}, {"alpha", alpha}};
  cert.audit.push_back(
      "flux-line field is singular on the polar axis, outside the C1 regularity hypothesis; "
      "constants follow the closed-form flux profile alpha*sin(theta)");
  if (C == 0.0) {
    cert.audit.push_back("integer alpha in (0,1) branch gives C = 0; no improvement certified");
  }
  return cert;
}

WeightCertificate zero_field_certificate() {
  WeightCertificate cert;
  cert.theorem = "none";
  cert.weight = Weight{WeightForm::kZero, 0.0, 1.0};
  cert.gauge = nlohmann::json{{"kind", "zero"}};
  cert.audit.push_back("radial flux vanishes identically, so the certified weight is zero");
  return cert;
}

}  // namespace maghardy
