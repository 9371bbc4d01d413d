// Thin JSON-string bridge; the Python side decodes.
#include "nilsol/classify.hpp"
#include "nilsol/errors.hpp"
#include "nilsol/suites.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace nilsol;

namespace {

ModeRequest mode_from(const std::string& m) {
  if (m == "auto") return ModeRequest::automatic;
  if (m == "exact") return ModeRequest::exact;
  if (m == "float") return ModeRequest::floating;
  throw InvalidSpec("mode must be auto, exact or float, got '" + m + "'");
}

std::string check(const std::string& space, const std::string& xi, const std::string& mode,
                  std::optional<std::uint64_t> seed) {
  py::gil_scoped_release release;
  auto iw = iwasawa_for(space);
  auto spec = NormalVectorSpec::parse(xi, seed);
  validate_spec(*iw, spec);
  auto rec = run_case(iw, spec, mode_from(mode), main_theorem_expectation(*iw, spec));
  if (!rec.error.empty()) throw Error(rec.error);
  return verdict_json(rec);
}

std::string classify(const std::string& space, int grid) {
  py::gil_scoped_release release;
  auto iw = iwasawa_for(space);
  Report r;
  for (const auto& spec : sweep_specs(*iw, GridConfig{grid, 2}))
    r.cases.push_back(run_case(iw, spec, ModeRequest::automatic, main_theorem_expectation(*iw, spec)));
  return report_json(r);
}

std::string catalog_run(unsigned jobs) {
  py::gil_scoped_release release;
  return report_json(run_catalog(golden_table(), ModeRequest::automatic, jobs));
}

std::pair<bool, std::string> verify(const std::string& suite, const std::string& space, std::uint64_t seed,
                                    std::size_t samples) {
  py::gil_scoped_release release;
  auto iw = iwasawa_for(space);
  SuiteReport r;
  if (suite == "lemmas") r = lemma_suite(iw, seed, samples);
  else if (suite == "geometry") r = geometry_suite(iw);
  else throw InvalidSpec("suite must be lemmas or geometry");
  return {r.passed(), r.to_text()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::register_exception<Error>(m, "NilsolError", PyExc_ValueError);
  m.def("list_spaces", &catalog_space_ids);
  m.def("check", &check, py::arg("space"), py::arg("xi"), py::arg("mode") = "auto", py::arg("seed") = py::none());
  m.def("classify", &classify, py::arg("space"), py::arg("grid") = 9);
  m.def("catalog_run", &catalog_run, py::arg("jobs") = 1);
  m.def("verify", &verify, py::arg("suite"), py::arg("space"), py::arg("seed") = 1, py::arg("samples") = 100);
}
