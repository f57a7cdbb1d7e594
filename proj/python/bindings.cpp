#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "nieval/cli.hpp"
#include "nieval/closed_form.hpp"
#include "nieval/errors.hpp"
#include "nieval/evaluation.hpp"
#include "nieval/info_theory.hpp"

namespace py = pybind11;
using namespace nieval;

namespace {

py::dict dispatch_dict(const ConfusionMatrix& cm, double tolerance) {
  const auto r = dispatch_ni(cm, tolerance);
  py::dict forms;
  for (const auto& f : r.evaluated()) forms[py::str(std::string(f.form))] = f.value;
  py::dict out;
  out["case"] = std::string(to_string(r.case_id));
  out["direct"] = r.direct;
  out["value"] = r.value();
  out["forms"] = forms;
  out["max_deviation"] = r.max_deviation();
  out["quarantined"] = r.quarantined;
  return out;
}

std::vector<ModelRecord> records(const std::vector<std::pair<std::string, ConfusionMatrix>>& ms) {
  std::vector<ModelRecord> out;
  out.reserve(ms.size());
  for (const auto& [name, cm] : ms) out.push_back({name, cm});
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Normalized mutual information for binary classifiers.";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

  py::class_<ClassSizes>(m, "ClassSizes")
      .def(py::init<double, double>(), py::arg("w1"), py::arg("w2"))
      .def_readwrite("w1", &ClassSizes::w1)
      .def_readwrite("w2", &ClassSizes::w2);

  py::class_<ConfusionMatrix>(m, "ConfusionMatrix")
      .def_static("from_counts", &ConfusionMatrix::from_counts, py::arg("tp"), py::arg("fp"),
                  py::arg("tn"), py::arg("fn"))
      .def_static("analysis", &ConfusionMatrix::analysis, py::arg("tp"), py::arg("fp"),
                  py::arg("tn"), py::arg("fn"))
      .def_property_readonly("tp", &ConfusionMatrix::tp)
      .def_property_readonly("fp", &ConfusionMatrix::fp)
      .def_property_readonly("tn", &ConfusionMatrix::tn)
      .def_property_readonly("fn", &ConfusionMatrix::fn)
      .def_property_readonly("w1", &ConfusionMatrix::w1)
      .def_property_readonly("w2", &ConfusionMatrix::w2)
      .def_property_readonly("total", &ConfusionMatrix::total)
      .def("__eq__", [](const ConfusionMatrix& a, const ConfusionMatrix& b) { return a == b; })
      .def("__repr__", [](const ConfusionMatrix& c) {
        std::ostringstream s;
        s << "ConfusionMatrix(tp=" << c.tp() << ", fp=" << c.fp() << ", tn=" << c.tn()
          << ", fn=" << c.fn() << ")";
        return s.str();
      });

  m.def("accuracy", &accuracy);
  m.def("precision", &precision);
  m.def("recall", &recall);
  m.def("false_alarm", &false_alarm);
  m.def("flip_predictions", &flip_predictions);
  m.def("ni", [](const ConfusionMatrix& cm) { return normalized_mutual_information(cm); },
        "NI through H(T) and H(T|Y); None when H(T) = 0.");
  m.def("entropy", [](const std::vector<double>& sizes) { return empirical_entropy(sizes); });
  m.def("classify_case",
        [](const ConfusionMatrix& cm) { return std::string(to_string(classify_case(cm))); });
  m.def("dispatch", &dispatch_dict, py::arg("cm"), py::arg("tolerance") = 1e-9);

  m.def("ni_case9_apr", &ni_case9_apr, py::arg("a"), py::arg("p"), py::arg("r"));
  m.def("accuracy_from_pr", &accuracy_from_pr, py::arg("p"), py::arg("r"), py::arg("sizes"));
  m.def("ni_from_pr", &ni_from_pr, py::arg("p"), py::arg("r"), py::arg("sizes"));
  m.def("precision_from_fr", &precision_from_fr, py::arg("f"), py::arg("r"), py::arg("sizes"));
  m.def("ni_from_fr", &ni_from_fr, py::arg("f"), py::arg("r"), py::arg("sizes"));

  m.def(
      "rank",
      [](const std::vector<std::pair<std::string, ConfusionMatrix>>& models, bool literal) {
        const auto rs = records(models);
        return rank(rs, literal ? CompareMode::Literal : CompareMode::Normalized).to_string();
      },
      py::arg("models"), py::arg("literal") = false,
      "Ranks (name, ConfusionMatrix) pairs; returns e.g. '-M_4 > M_1'.");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command line in-process; returns (exit_code, stdout, stderr).");
}
