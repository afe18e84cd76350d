#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "maghardy/pipeline.hpp"
#include "maghardy/verify.hpp"

using namespace maghardy;
using nlohmann::json;

namespace {

struct Opts {
  std::string field = "uniform";
  std::vector<std::string> params;
  double r_min = 0.25, r_max = 3.0;
  int nr = 96, ntheta = 129;
  int quad_order = 32;
  int nmax_intervals = 64;
  double tol = 1e-6;
  unsigned seed = 0;
  std::string out;
  std::string format = "csv";
  std::string method = "boundary";
  std::string grid = "linear";
  double split_len = 1.0;
};

void add_field_flags(CLI::App* sub, Opts& o) {
  sub->add_option("--field", o.field, "built-in field name or path to a field JSON file");
  sub->add_option("--param", o.params, "field parameter override key=value (repeatable)");
}

void add_grid_flags(CLI::App* sub, Opts& o) {
  sub->add_option("--r-min", o.r_min, "inner radius of the study annulus");
  sub->add_option("--r-max", o.r_max, "outer radius of the study annulus");
  sub->add_option("--nr", o.nr, "radial grid size (>= 16)");
  sub->add_option("--ntheta", o.ntheta, "polar grid size (>= 16)");
  sub->add_option("--quad-order", o.quad_order, "Gauss order for gauge and flux integrals");
  sub->add_option("--grid", o.grid, "radial spacing: linear or log")
      ->check(CLI::IsMember({"linear", "log"}));
  sub->add_option("--method", o.method, "flux route: boundary or surface")
      ->check(CLI::IsMember({"boundary", "surface"}));
}

void add_output_flags(CLI::App* sub, Opts& o) {
  sub->add_option("--out", o.out, "output path (stdout when omitted)");
  sub->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--seed", o.seed, "seed for randomized suites (outputs echo it)");
}

std::vector<std::pair<std::string, double>> parse_params(const std::vector<std::string>& items) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw CLI::ValidationError("--param", "expected key=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item.substr(eq + 1), &used);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--param", "value of '" + key + "' is not a number");
    }
    if (used != item.size() - eq - 1)
      throw CLI::ValidationError("--param", "value of '" + key + "' is not a number");
    out.emplace_back(key, value);
  }
  return out;
}

FieldSpec load_field(const Opts& o) {
  auto overrides = parse_params(o.params);
  std::ifstream in(o.field);
  if (in) {
    std::stringstream ss;
    ss << in.rdbuf();
    FieldSpec f = FieldSpec::parse(ss.str());
    for (const auto& [k, v] : overrides) f.set_parameter(k, v);
    return f;
  }
  return FieldSpec::builtin(o.field, overrides);
}

PipelineConfig make_config(const Opts& o) {
  if (!(o.r_min > 0.0) || !(o.r_min < o.r_max))
    throw CLI::ValidationError("--r-min/--r-max", "need 0 < r-min < r-max");
  if (o.nr < 16 || o.ntheta < 16)
    throw CLI::ValidationError("--nr/--ntheta", "grid sizes must be at least 16");
  if (o.quad_order < 2) throw CLI::ValidationError("--quad-order", "order must be at least 2");
  PipelineConfig cfg;
  cfg.r_min = o.r_min;
  cfg.r_max = o.r_max;
  cfg.n_r = o.nr;
  cfg.n_theta = o.ntheta;
  cfg.log_grid = o.grid == "log";
  cfg.method = flux_method_from_string(o.method);
  cfg.gauge_quad_order = o.quad_order;
  cfg.quad.n_theta = 2 * o.quad_order;
  cfg.quad.n_phi = 2 * o.quad_order;
  cfg.intervals.n_max = o.nmax_intervals;
  cfg.intervals.split_length = o.split_len;
  return cfg;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open '" + tmp + "' for writing");
    f << content;
    if (!f) throw std::runtime_error("short write to '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename '" + tmp + "' to '" + path + "'");
}

json vector_json(const std::vector<double>& v) { return json(v); }

int run_check_field(const Opts& o) {
  FieldSpec field = load_field(o);
  std::cout << "field: " << field.name() << "\n";
  std::cout << "coordinates: "
            << (field.coordinates() == Coordinates::kCartesian ? "cartesian" : "spherical")
            << "\n";
  std::cout << "singular set: " << field.singular_set() << "\n";

  std::string kind;
  double alpha = 0.0;
  GaugePotential gauge = select_gauge(field, o.quad_order, &kind, &alpha);
  std::cout << "gauge: " << kind << "\n";

  double max_div = 0.0, max_trans = 0.0;
  const double rg = std::sqrt(o.r_min * o.r_max);
  int skipped = 0;
  for (double r : {o.r_min, rg, o.r_max}) {
    for (double th : {0.7, 1.6, 2.4}) {
      Point3 p = Point3::spherical(r, th, 0.3);
      try {
        max_div = std::max(max_div, std::abs(divergence_residual(field, p)));
        max_trans = std::max(max_trans, gauge.transversality_residual(p));
      } catch (const FieldError&) {
        ++skipped;
      }
    }
  }
  std::printf("max |div B| over probes: %.3e\n", max_div);
  std::printf("max gauge transversality residual: %.3e\n", max_trans);

  Point3 probe = Point3::spherical(rg, 1.1, 0.4);
  try {
    double c1 = curl_residual(gauge, field, probe, 1e-3);
    double c2 = curl_residual(gauge, field, probe, 5e-4);
    std::printf("curl residual at r=%.4g: %.3e (step 1e-3), %.3e (step 5e-4)\n", rg, c1, c2);
  } catch (const FieldError& e) {
    std::cout << "curl probe skipped: " << e.what() << "\n";
  }
  if (skipped > 0) std::cout << "skipped " << skipped << " singular probe(s)\n";
  return 0;
}

int run_gauge(const Opts& o) {
  FieldSpec field = load_field(o);
  std::string kind;
  double alpha = 0.0;
  GaugePotential gauge = select_gauge(field, o.quad_order, &kind, &alpha);
  std::vector<double> r_grid = o.grid == "log" ? logspace(o.r_min, o.r_max, o.nr)
                                               : linspace(o.r_min, o.r_max, o.nr);
  std::vector<double> theta_grid = theta_midpoint_grid(o.ntheta);

  std::ostringstream csv;
  json rows = json::array();
  csv << "r,theta,ax,ay,az,transversality\n";
  char buf[256];
  for (double r : r_grid) {
    for (double th : theta_grid) {
      Point3 p = Point3::spherical(r, th, 0.0);
      Vec3 a = gauge.eval(p);
      double tr = gauge.transversality_residual(p);
      if (o.format == "csv") {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r, th, a.x, a.y,
                      a.z, tr);
        csv << buf;
      } else {
        rows.push_back({{"r", r},
                        {"theta", th},
                        {"ax", a.x},
                        {"ay", a.y},
                        {"az", a.z},
                        {"transversality", tr}});
      }
    }
  }
  if (o.format == "csv") write_output(o.out, csv.str());
  else write_output(o.out, json{{"kind", kind}, {"samples", rows}}.dump(2) + "\n");
  return 0;
}

int run_flux(const Opts& o) {
  FieldSpec field = load_field(o);
  PipelineConfig cfg = make_config(o);
  std::string kind;
  double alpha = 0.0;
  GaugePotential gauge = select_gauge(field, cfg.gauge_quad_order, &kind, &alpha);
  std::vector<double> r_grid = cfg.log_grid ? logspace(cfg.r_min, cfg.r_max, cfg.n_r)
                                            : linspace(cfg.r_min, cfg.r_max, cfg.n_r);
  FluxProfile fp = flux_profile(field, gauge, r_grid, theta_midpoint_grid(cfg.n_theta),
                                cfg.method, cfg.quad);
  if (o.format == "csv") {
    std::ostringstream ss;
    write_flux_csv(fp, ss);
    write_output(o.out, ss.str());
  } else {
    json j;
    j["r"] = vector_json(fp.r);
    j["theta"] = vector_json(fp.theta);
    j["value"] = fp.value;
    j["method"] = fp.method;
    write_output(o.out, j.dump(2) + "\n");
  }
  return 0;
}

json witness_json(const std::optional<AngularWitness>& w) {
  if (!w) return nullptr;
  return json{{"M", w->M},
              {"theta0", w->theta0},
              {"theta1", w->theta1},
              {"lambda", w->lambda},
              {"k1", w->k1},
              {"k2", w->k2}};
}

int run_weight(const Opts& o) {
  FieldSpec field = load_field(o);
  PipelineConfig cfg = make_config(o);
  std::string kind;
  double alpha = 0.0;
  GaugePotential gauge = select_gauge(field, cfg.gauge_quad_order, &kind, &alpha);
  std::vector<double> r_grid = cfg.log_grid ? logspace(cfg.r_min, cfg.r_max, cfg.n_r)
                                            : linspace(cfg.r_min, cfg.r_max, cfg.n_r);
  FluxProfile fp = flux_profile(field, gauge, r_grid, theta_midpoint_grid(cfg.n_theta),
                                cfg.method, cfg.quad);
  W2Profile w2 = w2_profile(fp, cfg.witness);
  if (o.format == "csv") {
    std::ostringstream ss;
    write_weight_csv(w2, ss);
    write_output(o.out, ss.str());
  } else {
    json j;
    j["r"] = vector_json(w2.r);
    j["w2"] = vector_json(w2.w2);
    json ws = json::array();
    for (const auto& w : w2.witness) ws.push_back(witness_json(w));
    j["witness"] = ws;
    write_output(o.out, j.dump(2) + "\n");
  }
  return 0;
}

int run_certify(const Opts& o, const std::string& theorem, double r0, int pick) {
  FieldSpec field = load_field(o);
  PipelineConfig cfg = make_config(o);
  cfg.target = theorem == "t2" ? "T2_inverse_square" : "T1_log";
  cfg.r0 = r0;
  cfg.pick = pick;
  PipelineResult res = run_pipeline(field, cfg);
  if (!res.certified) {
    std::cerr << "certificate rejected (" << res.failure << ")\n";
    return 1;
  }
  write_output(o.out, res.certificate.to_json().dump(2) + "\n");
  return 0;
}

int run_verify(const Opts& o, const std::string& cert_path, const std::string& suite_name,
               double inflate) {
  std::ifstream in(cert_path);
  if (!in) throw std::runtime_error("cannot read certificate '" + cert_path + "'");
  json doc = json::parse(in);
  WeightCertificate cert = WeightCertificate::from_json(doc);

  std::vector<TestFunction> suite = default_suite();
  if (suite_name == "quick") suite.resize(6);
  else if (suite_name != "default")
    throw CLI::ValidationError("--suite", "available suites: default, quick");

  AuditOptions opts;
  opts.inflate = inflate;
  opts.form.tol_rel = o.tol;
  std::vector<VerificationReport> reports = certificate_audit(cert, suite, opts);

  std::ostringstream ss;
  write_reports_jsonl(reports, ss);
  write_output(o.out, ss.str());

  int failures = 0;
  for (const auto& r : reports) {
    if (!r.pass) ++failures;
    if (!o.out.empty()) {
      std::printf("%-28s %s  margin=%.6g tol=%.3g\n", r.name.c_str(),
                  r.pass ? "pass" : "FAIL", r.margin, r.tol);
    }
  }
  if (failures > 0) {
    std::fprintf(stderr, "%d of %zu checks failed\n", failures, reports.size());
    return 3;
  }
  return 0;
}

int run_ab(const Opts& o) {
  double alpha = 0.5;
  for (const auto& [k, v] : parse_params(o.params)) {
    if (k == "alpha") alpha = v;
    else throw CLI::ValidationError("--param", "unknown parameter '" + k + "' (expected alpha)");
  }
  WeightCertificate cert = ab_constants(alpha);
  write_output(o.out, cert.to_json().dump(2) + "\n");
  return 0;
}

int run_scale(const Opts& o, std::vector<double> alphas) {
  if (alphas.empty()) alphas = {1e-2, 1e-3};
  FieldSpec field = load_field(o);
  PipelineConfig cfg = make_config(o);
  std::vector<WeakFieldRow> rows = weak_field_scaling(field, alphas, cfg);
  std::vector<double> r_grid = cfg.log_grid ? logspace(cfg.r_min, cfg.r_max, cfg.n_r)
                                            : linspace(cfg.r_min, cfg.r_max, cfg.n_r);
  if (o.format == "csv") {
    std::ostringstream ss;
    ss << "alpha,r,ratio\n";
    char buf[128];
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.ratio.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", row.alpha, r_grid[i],
                      row.ratio[i]);
        ss << buf;
      }
    }
    write_output(o.out, ss.str());
  } else {
    json j = json::array();
    for (const auto& row : rows)
      j.push_back({{"alpha", row.alpha}, {"r", vector_json(r_grid)}, {"ratio", row.ratio}});
    write_output(o.out, j.dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hardy-improvement weight certificates for divergence-free 3d magnetic fields"};
  app.require_subcommand(1);
  Opts o;
  int code = 0;

  auto* check = app.add_subcommand("check-field", "parse a field and print regularity probes");
  add_field_flags(check, o);
  add_grid_flags(check, o);
  check->callback([&] { code = run_check_field(o); });

  auto* gauge = app.add_subcommand("gauge", "sample the transversal gauge on a grid");
  add_field_flags(gauge, o);
  add_grid_flags(gauge, o);
  add_output_flags(gauge, o);
  gauge->callback([&] { code = run_gauge(o); });

  auto* flux = app.add_subcommand("flux", "normalized flux profile through spherical caps");
  add_field_flags(flux, o);
  add_grid_flags(flux, o);
  add_output_flags(flux, o);
  flux->callback([&] { code = run_flux(o); });

  auto* weight = app.add_subcommand("weight", "radial Hardy weight profile from angular witnesses");
  add_field_flags(weight, o);
  add_grid_flags(weight, o);
  add_output_flags(weight, o);
  weight->callback([&] { code = run_weight(o); });

  auto* certify = app.add_subcommand("certify", "full pipeline to a weight certificate");
  std::string theorem = "t1";
  double r0 = 0.0;
  int pick = -1;
  add_field_flags(certify, o);
  add_grid_flags(certify, o);
  add_output_flags(certify, o);
  certify->add_option("--theorem", theorem, "certificate family: t1 (log) or t2 (inverse square)")
      ->check(CLI::IsMember({"t1", "t2"}));
  certify->add_option("--r0", r0, "hypothesis radius recorded in inverse-square certificates");
  certify->add_option("--pick", pick, "interval index for the log certificate (-1 = best)");
  certify->add_option("--nmax-intervals", o.nmax_intervals, "interval detection cap");
  certify->add_option("--split-len", o.split_len, "maximum detected interval length");
  certify->callback([&] { code = run_certify(o, theorem, r0, pick); });

  auto* verify = app.add_subcommand("verify", "audit a certificate against a test-function suite");
  std::string cert_path, suite_name = "default";
  double inflate = 1.0;
  verify->add_option("--cert", cert_path, "certificate JSON path")->required();
  verify->add_option("--suite", suite_name, "test-function suite: default or quick");
  verify->add_option("--inflate", inflate, "multiply the certified weight before auditing");
  verify->add_option("--tol", o.tol, "relative margin tolerance");
  add_output_flags(verify, o);
  verify->callback([&] { code = run_verify(o, cert_path, suite_name, inflate); });

  auto* ab = app.add_subcommand("ab", "closed-form constants for the azimuthal flux family");
  add_field_flags(ab, o);
  add_output_flags(ab, o);
  ab->callback([&] { code = run_ab(o); });

  auto* scale = app.add_subcommand("scale", "weak-field study: w2(alpha B)/alpha^2 profiles");
  std::vector<double> alphas;
  add_field_flags(scale, o);
  add_grid_flags(scale, o);
  add_output_flags(scale, o);
  scale->add_option("--alpha", alphas, "field scale factor (repeatable; default 1e-2, 1e-3)");
  scale->callback([&] { code = run_scale(o, alphas); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int c = app.exit(e);
    return c == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return code;
}
