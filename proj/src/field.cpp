#include "maghardy/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace maghardy {

using nlohmann::json;

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

FieldSpec FieldSpec::from_parts(std::string name, Coordinates coords,
                                std::vector<std::string> components,
                                std::vector<std::pair<std::string, double>> parameters,
                                std::string singular_set) {
  FieldSpec f;
  f.name_ = std::move(name);
  f.coords_ = coords;
  f.component_texts_ = std::move(components);
  f.parameters_ = std::move(parameters);
  f.singular_set_ = singular_set.empty() ? "none" : std::move(singular_set);
  if (f.component_texts_.size() != 3)
    throw FieldError("field '" + f.name_ + "': expected exactly 3 components, got " +
                     std::to_string(f.component_texts_.size()));
  f.compile();
  return f;
}

FieldSpec FieldSpec::parse(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw FieldError(std::string("field spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FieldError("field spec must be a JSON object");

  std::string name = doc.value("name", "unnamed");
  std::string coords_str = doc.value("coordinates", "");
  Coordinates coords;
  if (coords_str == "cartesian") coords = Coordinates::kCartesian;
  else if (coords_str == "spherical") coords = Coordinates::kSpherical;
  else throw FieldError("field '" + name + "': coordinates must be \"cartesian\" or \"spherical\"");

  if (!doc.contains("components") || !doc["components"].is_array())
    throw FieldError("field '" + name + "': missing components array");
  std::vector<std::string> comps;
  for (const auto& c : doc["components"]) {
    if (!c.is_string()) throw FieldError("field '" + name + "': components must be strings");
    comps.push_back(c.get<std::string>());
  }

  std::vector<std::pair<std::string, double>> params;
  if (doc.contains("parameters")) {
    for (auto it = doc["parameters"].begin(); it != doc["parameters"].end(); ++it) {
      if (!it.value().is_number())
        throw FieldError("field '" + name + "': parameter '" + it.key() + "' must be a number");
      params.emplace_back(it.key(), it.value().get<double>());
    }
    std::sort(params.begin(), params.end());
  }

  FieldSpec f = from_parts(name, coords, comps, params, doc.value("singular_set", "none"));
  if (doc.contains("radial_breakpoints")) {
    std::vector<double> b;
    for (const auto& v : doc["radial_breakpoints"]) b.push_back(v.get<double>());
    f.set_radial_breakpoints(std::move(b));
  }
  return f;
}

std::string FieldSpec::to_json() const {
  json doc;
  doc["name"] = name_;
  doc["coordinates"] = coords_ == Coordinates::kCartesian ? "cartesian" : "spherical";
  doc["components"] = component_texts_;
  json params = json::object();
  for (const auto& [k, v] : parameters_) params[k] = v;
  doc["parameters"] = params;
  if (singular_set_ != "none") doc["singular_set"] = singular_set_;
  if (!radial_breakpoints_.empty()) doc["radial_breakpoints"] = radial_breakpoints_;
  return doc.dump(2);
}

FieldSpec FieldSpec::builtin(const std::string& name,
                             const std::vector<std::pair<std::string, double>>& overrides) {
  FieldSpec f;
  if (name == "uniform") {
    f = from_parts("uniform", Coordinates::kCartesian, {"0", "0", "1"}, {});
  } else if (name == "zero") {
    f = from_parts("zero", Coordinates::kCartesian, {"0", "0", "0"}, {});
  } else if (name == "ab3d") {
    f = from_parts("ab3d", Coordinates::kSpherical,
                   {"alpha*cos(theta)/(sin(theta)*r^2)", "0", "0"},
                   {{"alpha", 0.5}}, "x3-axis");
  } else if (name == "loop") {
    // curl of exp(-|x|^2) * (-y, x, 0): a smooth ring of flux near |x| = 1
    // with rapidly decaying tails.
    const std::string g = "exp(-(x^2+y^2+z^2))";
    f = from_parts("loop", Coordinates::kCartesian,
                   {"2*x*z*" + g, "2*y*z*" + g, "2*(1-(x^2+y^2))*" + g}, {});
  } else if (name == "shell") {
    // Flux profile (1/2) * F(r) * p(theta) with F a logistic window on
    // [r0, r1] and p = sin^2/(sin^2 + eps^2), turned into a source-free field:
    //   B_r     = dtheta(Phi) / (r^2 sin), B_theta = -dr(Phi) / (r sin).
    // Carries most of half a flux quantum across a thin radial shell, which
    // makes the certified weight constants unusually tight for audit tests.
    const std::string sa = "(1/(1+exp(-k*(r-r0))))";
    const std::string sb = "(1/(1+exp(-k*(r1-r))))";
    const std::string br =
        sa + "*" + sb + "*eps^2*cos(theta)/(r^2*(sin(theta)^2+eps^2)^2)";
    const std::string bt = "-k*" + sa + "*" + sb + "*(" + sb + "-" + sa +
                           ")*sin(theta)/(2*r*(sin(theta)^2+eps^2))";
    f = from_parts("shell", Coordinates::kSpherical, {br, bt, "0"},
                   {{"eps", 0.5}, {"k", 2500.0}, {"r0", 0.01}, {"r1", 0.025}});
  } else {
    throw FieldError("unknown built-in field '" + name + "'");
  }
  for (const auto& [k, v] : overrides) f.set_parameter(k, v);
  if (f.name_ == "shell") {
    double k = f.parameter("k"), r0 = f.parameter("r0"), r1 = f.parameter("r1");
    double pad = 7.0 / k;
    std::vector<double> b;
    for (double r : {r0 - pad, r0 + pad, r1 - pad, r1 + pad})
      if (r > 0.0) b.push_back(r);
    f.set_radial_breakpoints(std::move(b));
  }
  return f;
}

void FieldSpec::compile() {
  symbols_.clear();
  if (coords_ == Coordinates::kCartesian) symbols_ = {"x", "y", "z"};
  else symbols_ = {"r", "theta", "phi"};
  for (const auto& [k, v] : parameters_) symbols_.push_back(k);
  for (int i = 0; i < 3; ++i) {
    try {
      compiled_[i] = Expression::parse(component_texts_[i], symbols_);
    } catch (const ExprError& e) {
      throw FieldError("field '" + name_ + "' component " + std::to_string(i) + ": " + e.what());
    }
  }
}

void FieldSpec::set_parameter(const std::string& key, double value) {
  for (auto& [k, v] : parameters_)
    if (k == key) { v = value; return; }
  throw FieldError("field '" + name_ + "' has no parameter '" + key + "'");
}

double FieldSpec::parameter(const std::string& key) const {
  for (const auto& [k, v] : parameters_)
    if (k == key) return v;
  throw FieldError("field '" + name_ + "' has no parameter '" + key + "'");
}

bool FieldSpec::phi_independent() const {
  if (coords_ != Coordinates::kSpherical) return false;
  for (int i = 0; i < 3; ++i)
    if (compiled_[i].references(2)) return false;
  return true;
}

bool FieldSpec::point_is_singular(const Point3& p) const {
  if (singular_set_ == "none") return false;
  if (singular_set_ == "origin") return p.r <= 1e-14;
  if (singular_set_ == "x3-axis" || singular_set_ == "z-axis" || singular_set_ == "axis") {
    double rho2 = p.x * p.x + p.y * p.y;
    double tol = 1e-14 * (1.0 + p.r);
    return rho2 <= tol * tol;
  }
  return false;  // free-text set: caller's responsibility, non-finite guard still applies
}

Vec3 FieldSpec::eval(const Point3& p) const {
  if (point_is_singular(p))
    throw SingularPointError("field '" + name_ + "' evaluated on its singular set (" +
                             singular_set_ + ") at r=" + fmt_double(p.r));
  double values[16];
  std::size_t nsym = symbols_.size();
  if (nsym > 16) throw FieldError("too many parameters");
  if (coords_ == Coordinates::kCartesian) {
    values[0] = p.x; values[1] = p.y; values[2] = p.z;
  } else {
    values[0] = p.r; values[1] = p.theta; values[2] = p.phi;
  }
  for (std::size_t i = 0; i < parameters_.size(); ++i) values[3 + i] = parameters_[i].second;

  double c[3];
  for (int i = 0; i < 3; ++i) {
    c[i] = compiled_[i].eval(values);
    if (!std::isfinite(c[i]))
      throw FieldError("field '" + name_ + "' component " + std::to_string(i) +
                       " is non-finite at (x=" + fmt_double(p.x) + ", y=" + fmt_double(p.y) +
                       ", z=" + fmt_double(p.z) + ")");
  }
  if (coords_ == Coordinates::kCartesian) return {c[0], c[1], c[2]};
  return c[0] * unit_r(p) + c[1] * unit_theta(p) + c[2] * unit_phi(p);
}

FieldSpec FieldSpec::scaled(double factor) const {
  FieldSpec f = *this;
  f.name_ = name_ + "*" + fmt_double(factor);
  for (auto& text : f.component_texts_) text = "(" + fmt_double(factor) + ")*(" + text + ")";
  f.compile();
  return f;
}

double divergence_residual(const FieldSpec& field, const Point3& p, double step) {
  double h = step * (1.0 + p.r);
  auto at = [&](double dx, double dy, double dz) {
    return field.eval(Point3::cartesian(p.x + dx, p.y + dy, p.z + dz));
  };
  double div = (at(h, 0, 0).x - at(-h, 0, 0).x + at(0, h, 0).y - at(0, -h, 0).y +
                at(0, 0, h).z - at(0, 0, -h).z) /
               (2.0 * h);
  return div;
}

}  // namespace maghardy
