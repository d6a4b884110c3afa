#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "demazure/golden.hpp"
#include "demazure/serialize.hpp"
#include "demazure/session.hpp"

namespace py = pybind11;
using namespace demazure;

namespace {

Session open(const std::string& type, const std::string& family, const std::optional<std::string>& fgl,
             const std::string& words) {
  SessionConfig config;
  config.type = type;
  config.family = family;
  config.words = words;
  if (fgl) {
    config.law = parse_law(*fgl);
    config.law_given = true;
  }
  return open_session(config);
}

std::optional<WeylElement> element(const RootDatum& d, const std::optional<std::string>& word) {
  if (!word) return std::nullopt;
  return word->empty() || *word == "e" ? d.identity() : d.parse_element(*word);
}

std::string weyl_group(const std::string& type) {
  const RootDatum d = RootDatum::from_type(type);
  Json out = Json::array();
  for (auto w : d.weyl_elements()) out.push_back(d.format_word(d.reduced_word(w)));
  return out.dump();
}

std::string structure_constants(const std::string& type, const std::string& family, const std::optional<std::string>& fgl,
                                const std::optional<std::string>& u, const std::optional<std::string>& v,
                                const std::string& words, const std::string& provenance, int jobs) {
  if (provenance != "formula" && provenance != "oracle") throw ConfigError("provenance must be formula or oracle");
  Session s = open(type, family, fgl, words);
  StructureTable t;
  {
    py::gil_scoped_release release;
    t = build_table(*s.basis, provenance == "formula" ? Provenance::formula : Provenance::oracle, jobs,
                    element(*s.datum, u), element(*s.datum, v));
  }
  return to_json(*s.ring, t).dump();
}

std::string restriction(const std::string& type, const std::string& w, const std::string& v, const std::string& family,
                        const std::optional<std::string>& fgl) {
  Session s = open(type, family, fgl, "lexmin");
  return to_json(*s.ring, s.basis->b(*element(*s.datum, v), *element(*s.datum, w))).dump();
}

std::string verify(const std::string& suite, const std::optional<std::string>& type, const std::string& corpus) {
  std::vector<CheckResult> checks;
  if (suite == "paper-examples") {
    GoldenFilter filter;
    filter.type = type;
    checks = run_golden_corpus(corpus, filter);
  } else {
    Session s = open(type.value_or("A2"), "x", std::nullopt, "lexmin");
    const OperatorFamily& f = s.family();
    if (suite == "relations") {
      checks.push_back(check_relations(f));
    } else if (suite == "duality") {
      checks.push_back(check_duality(*s.basis));
      checks.push_back(check_formula_vs_oracle(*s.basis));
    } else {
      throw ConfigError("unknown suite '" + suite + "'");
    }
  }
  return report_to_json(checks).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Structure constants of dual Demazure-type classes; results are JSON strings.";
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<RootDatumError>(m, "RootDatumError", PyExc_ValueError);
  py::register_exception<AlgebraError>(m, "AlgebraError", PyExc_ArithmeticError);
  m.def("weyl_group", &weyl_group, py::arg("type"));
  m.def("structure_constants", &structure_constants, py::arg("type"), py::arg("family") = "x",
        py::arg("fgl") = std::nullopt, py::arg("u") = std::nullopt, py::arg("v") = std::nullopt,
        py::arg("words") = "lexmin", py::arg("provenance") = "formula", py::arg("jobs") = 1);
  m.def("restriction", &restriction, py::arg("type"), py::arg("w"), py::arg("v"), py::arg("family") = "x",
        py::arg("fgl") = std::nullopt);
  m.def("verify", &verify, py::arg("suite"), py::arg("type") = std::nullopt, py::arg("corpus") = "");
}
