#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "regretlab/acceptance.hpp"
#include "regretlab/harness.hpp"

namespace py = pybind11;

namespace {

py::dict row_to_dict(const regretlab::ResultRow& r) {
  py::dict d;
  d["config_hash"] = r.config_hash;
  d["learner"] = r.learner;
  d["mode"] = r.mode;
  d["T"] = r.T;
  d["d"] = r.d;
  d["seed"] = r.seed;
  d["regret"] = r.regret;
  d["forward_regret"] = r.forward_regret;
  d["stability"] = r.stability;
  d["bound_name"] = r.bound_name;
  d["bound_theoretical"] = r.bound_theoretical;
  d["bound_empirical"] = r.bound_empirical;
  d["slack"] = r.slack;
  d["pass"] = r.pass;
  d["wall_clock_ms"] = r.wall_clock_ms;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "online learning bound verification harness";

  m.def(
      "run_config",
      [](const std::string& json_text, const std::vector<std::string>& overrides) {
        regretlab::ExperimentConfig cfg =
            regretlab::parse_config(json_text, overrides);
        py::list rows;
        for (const regretlab::ResultRow& r : regretlab::run_experiment(cfg))
          rows.append(row_to_dict(r));
        return rows;
      },
      py::arg("json_text"), py::arg("overrides") = std::vector<std::string>{},
      "parse an experiment config, run it, and return the result rows as dicts");

  m.def(
      "canonical_config",
      [](const std::string& json_text, const std::vector<std::string>& overrides) {
        return regretlab::canonical_config(
            regretlab::parse_config(json_text, overrides));
      },
      py::arg("json_text"), py::arg("overrides") = std::vector<std::string>{},
      "normalized config text with every field materialized");

  m.def(
      "config_hash",
      [](const std::string& json_text, const std::vector<std::string>& overrides) {
        return regretlab::config_hash(regretlab::parse_config(json_text, overrides));
      },
      py::arg("json_text"), py::arg("overrides") = std::vector<std::string>{},
      "stable 16-hex-digit hash of the canonical config");

  m.def(
      "to_csv",
      [](const std::string& json_text, const std::vector<std::string>& overrides) {
        regretlab::ExperimentConfig cfg =
            regretlab::parse_config(json_text, overrides);
        return regretlab::to_csv(regretlab::run_experiment(cfg));
      },
      py::arg("json_text"), py::arg("overrides") = std::vector<std::string>{},
      "run a config and render the rows in the fixed CSV schema");

  m.def(
      "acceptance",
      [](const std::string& suite) {
        py::list out;
        for (const regretlab::CriterionResult& r :
             regretlab::run_acceptance_suite(suite)) {
          py::dict d;
          d["name"] = r.name;
          d["pass"] = r.pass;
          d["detail"] = r.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("suite") = "all",
      "run an acceptance suite and return one verdict dict per criterion");

  m.def("acceptance_suites", &regretlab::acceptance_suites,
        "suite names in execution order");
  m.def("dyadic_horizons", &regretlab::dyadic_horizons, py::arg("lo"),
        py::arg("hi"), "powers-of-two horizons from lo to hi inclusive");

  py::register_exception<regretlab::ConfigError>(m, "ConfigError",
                                                 PyExc_ValueError);
}
