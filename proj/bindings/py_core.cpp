#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "maghardy/pipeline.hpp"
#include "maghardy/verify.hpp"

namespace py = pybind11;
using namespace maghardy;
using nlohmann::json;

namespace {

py::object json_to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::null: return py::none();
    case json::value_t::boolean: return py::bool_(j.get<bool>());
    case json::value_t::number_integer: return py::int_(j.get<long long>());
    case json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
    case json::value_t::number_float: return py::float_(j.get<double>());
    case json::value_t::string: return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list out;
      for (const auto& v : j) out.append(json_to_py(v));
      return out;
    }
    case json::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it) out[py::str(it.key())] = json_to_py(it.value());
      return out;
    }
    default: return py::none();
  }
}

FieldSpec field_from_arg(const std::string& text, const std::map<std::string, double>& params) {
  std::vector<std::pair<std::string, double>> overrides(params.begin(), params.end());
  if (!text.empty() && text.front() == '{') {
    FieldSpec f = FieldSpec::parse(text);
    for (const auto& [k, v] : overrides) f.set_parameter(k, v);
    return f;
  }
  return FieldSpec::builtin(text, overrides);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hardy-improvement weight certificates for divergence-free 3d magnetic fields";

  m.def("nearest_integer_distance_sq", &nearest_integer_distance_sq, py::arg("phi"));
  m.def("w1_potential", &w1_potential, py::arg("flux"), py::arg("theta"));
  m.def("k1_constant", &k1_constant, py::arg("c"));
  m.def("k2_constant", &k2_constant, py::arg("theta0"), py::arg("theta1"));
  m.def("lambda_constant", &lambda_constant, py::arg("M"), py::arg("theta0"), py::arg("theta1"));

  m.def(
      "ab_constants",
      [](double alpha) { return json_to_py(ab_constants(alpha).to_json()); }, py::arg("alpha"),
      "closed-form improved-Hardy constants for the azimuthal flux family");

  m.def(
      "angular_oracle_min_eigenvalue",
      [](const std::function<double(double)>& V, int n) {
        return angular_oracle_min_eigenvalue(V, n);
      },
      py::arg("V"), py::arg("n") = 2000,
      "smallest eigenvalue of the weighted Neumann problem on (0, pi)");

  m.def(
      "field_json",
      [](const std::string& field, const std::map<std::string, double>& params) {
        return json_to_py(json::parse(field_from_arg(field, params).to_json()));
      },
      py::arg("field"), py::arg("params") = std::map<std::string, double>{},
      "resolve a built-in name or field JSON text to its canonical document");

  m.def(
      "certify",
      [](const std::string& field, const std::map<std::string, double>& params,
         const std::string& theorem, double r_min, double r_max, int n_r, int n_theta,
         const std::string& grid, const std::string& method, double split_len, int n_max) {
        FieldSpec f = field_from_arg(field, params);
        PipelineConfig cfg;
        cfg.target = theorem == "t2" ? "T2_inverse_square" : "T1_log";
        cfg.r_min = r_min;
        cfg.r_max = r_max;
        cfg.n_r = n_r;
        cfg.n_theta = n_theta;
        cfg.log_grid = grid == "log";
        cfg.method = flux_method_from_string(method);
        cfg.intervals.split_length = split_len;
        cfg.intervals.n_max = n_max;
        PipelineResult res = run_pipeline(f, cfg);
        py::dict out;
        out["certified"] = res.certified;
        out["failure"] = res.failure;
        out["certificate"] = json_to_py(res.certificate.to_json());
        out["r"] = py::cast(res.w2.r);
        out["w2"] = py::cast(res.w2.w2);
        return out;
      },
      py::arg("field"), py::arg("params") = std::map<std::string, double>{},
      py::arg("theorem") = "t1", py::arg("r_min") = 0.25, py::arg("r_max") = 3.0,
      py::arg("n_r") = 96, py::arg("n_theta") = 129, py::arg("grid") = "linear",
      py::arg("method") = "boundary", py::arg("split_len") = 1.0, py::arg("n_max") = 64,
      "run the full weight-certificate pipeline on a field");

  m.def(
      "audit",
      [](const py::object& certificate, const std::string& suite, double inflate, double tol) {
        std::string text;
        if (py::isinstance<py::str>(certificate)) {
          text = certificate.cast<std::string>();
        } else {
          py::object dumps = py::module_::import("json").attr("dumps");
          text = dumps(certificate).cast<std::string>();
        }
        WeightCertificate cert = WeightCertificate::from_json(json::parse(text));
        std::vector<TestFunction> s = default_suite();
        if (suite == "quick") s.resize(6);
        else if (suite != "default")
          throw std::invalid_argument("available suites: default, quick");
        AuditOptions opts;
        opts.inflate = inflate;
        opts.form.tol_rel = tol;
        py::list out;
        for (const auto& rep : certificate_audit(cert, s, opts)) out.append(json_to_py(rep.to_json()));
        return out;
      },
      py::arg("certificate"), py::arg("suite") = "quick", py::arg("inflate") = 1.0,
      py::arg("tol") = 1e-6,
      "re-check a certificate's inequality against a test-function suite");
}
