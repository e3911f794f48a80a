// Python bindings for the main operations: parameter validation, exact
// hypergeometric and committee-takeover probabilities, the attack summary,
// and the Monte-Carlo estimators.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>

#include <nlohmann/json.hpp>

#include "shardsec/attack.hpp"
#include "shardsec/genpoly.hpp"
#include "shardsec/hypergeom.hpp"
#include "shardsec/jhda.hpp"
#include "shardsec/scenario_io.hpp"
#include "shardsec/simulate.hpp"

namespace py = pybind11;
using namespace shardsec;

namespace {

py::int_ big_to_py(const BigInt& value) {
  const std::string digits = value.str();
  PyObject* obj = PyLong_FromString(digits.c_str(), nullptr, 10);
  if (obj == nullptr) throw py::error_already_set();
  return py::reinterpret_steal<py::int_>(obj);
}

py::object make_fraction(const BigInt& num, const BigInt& den) {
  static py::object fraction_type = py::module_::import("fractions").attr("Fraction");
  return fraction_type(big_to_py(num), big_to_py(den));
}

py::object rational_to_py(const Rational& value) {
  return make_fraction(boost::multiprecision::numerator(value),
                       boost::multiprecision::denominator(value));
}

py::object duration_to_py(const ExpectedDuration& duration) {
  if (duration.is_infinite()) {
    return py::cast(std::numeric_limits<double>::infinity());
  }
  return rational_to_py(duration.value());
}

Rational rational_from_py(const py::handle& value) {
  if (py::isinstance<py::int_>(value)) {
    return Rational(BigInt(py::str(value).cast<std::string>()));
  }
  return parse_rational_text(py::str(value).cast<std::string>());
}

RawParams raw_from_dict(const py::dict& d) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& item : d) {
    const std::string key = py::str(item.first).cast<std::string>();
    if (key == "label") {
      j[key] = py::str(item.second).cast<std::string>();
    } else if (key == "r" || key == "R") {
      j[key] = rational_text(rational_from_py(item.second));
    } else {
      j[key] = item.second.cast<std::int64_t>();
    }
  }
  return scenario_from_json(j);
}

py::object json_to_py(const nlohmann::ordered_json& j) {
  switch (j.type()) {
    case nlohmann::ordered_json::value_t::object: {
      py::dict d;
      for (const auto& [key, value] : j.items()) d[py::str(key)] = json_to_py(value);
      return d;
    }
    case nlohmann::ordered_json::value_t::array: {
      py::list l;
      for (const auto& value : j) l.append(json_to_py(value));
      return l;
    }
    case nlohmann::ordered_json::value_t::string:
      return py::cast(j.get<std::string>());
    case nlohmann::ordered_json::value_t::boolean:
      return py::cast(j.get<bool>());
    case nlohmann::ordered_json::value_t::number_integer:
      return py::cast(j.get<std::int64_t>());
    case nlohmann::ordered_json::value_t::number_unsigned:
      return py::cast(j.get<std::uint64_t>());
    case nlohmann::ordered_json::value_t::number_float:
      return py::cast(j.get<double>());
    default:
      return py::none();
  }
}

py::dict estimate_to_dict(const TrialEstimate& est) {
  py::dict d;
  d["p_hat"] = est.p_hat;
  d["std_err"] = est.std_err;
  d["failures"] = est.failures;
  d["trials"] = est.trials;
  d["seed"] = est.seed;
  d["generator"] = est.generator;
  return d;
}

py::dict outcome_to_dict(const SimOutcome& outcome) {
  py::dict d;
  d["epochs"] = outcome.epochs;
  d["pool_breaches"] = outcome.pool_breaches;
  d["takeover_failures"] = outcome.takeover_failures;
  d["joint_failures"] = outcome.joint_failures;
  d["committee_histogram"] = outcome.committee_histogram;
  d["seed"] = outcome.seed;
  d["generator"] = outcome.generator;
  d["mode"] = sim_mode_label(outcome.mode);
  return d;
}

}  // namespace

PYBIND11_MODULE(shardsec, m) {
  m.doc() = "Exact security analysis of committee-based sharding against Sybil attacks";
  m.attr("__version__") = "0.1.0";
  m.attr("DEFAULT_ENUMERATION_BUDGET") = kDefaultEnumerationBudget;

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  py::class_<ExactProb>(m, "ExactProb", "An exact probability in [0, 1]")
      .def_property_readonly("numerator", [](const ExactProb& p) { return big_to_py(p.numerator()); })
      .def_property_readonly("denominator",
                             [](const ExactProb& p) { return big_to_py(p.denominator()); })
      .def("as_fraction",
           [](const ExactProb& p) { return make_fraction(p.numerator(), p.denominator()); })
      .def("scientific",
           static_cast<std::string (*)(const ExactProb&, int)>(&to_scientific),
           py::arg("sig_digits") = 3)
      .def("complement", &ExactProb::complement)
      .def("__float__", &ExactProb::to_double)
      .def("__eq__", [](const ExactProb& a, const ExactProb& b) { return a == b; })
      .def("__mul__", [](const ExactProb& a, const ExactProb& b) { return a * b; })
      .def("__repr__", [](const ExactProb& p) {
        return "ExactProb(" + p.numerator().str() + "/" + p.denominator().str() + ")";
      });

  py::class_<NetworkParams>(m, "NetworkParams", "Validated protocol parameters")
      .def_property_readonly("N", &NetworkParams::total_nodes)
      .def_property_readonly("K", &NetworkParams::selection_pool)
      .def_property_readonly("M", &NetworkParams::sybil_ids)
      .def_property_readonly("M_sel", &NetworkParams::sybil_selected)
      .def_property_readonly("n", &NetworkParams::committee_size)
      .def_property_readonly("N_s", &NetworkParams::rounds_per_year)
      .def_property_readonly("label", &NetworkParams::label)
      .def_property_readonly("Lambda", &NetworkParams::id_pool)
      .def_property_readonly("committee_count", &NetworkParams::committee_count)
      .def_property_readonly("leftover_ids", &NetworkParams::leftover_ids)
      .def_property_readonly("committee_capacity", &NetworkParams::committee_capacity)
      .def_property_readonly(
          "r", [](const NetworkParams& p) { return rational_to_py(p.committee_resiliency()); })
      .def_property_readonly(
          "R", [](const NetworkParams& p) { return rational_to_py(p.selection_resiliency()); })
      .def("__repr__", [](const NetworkParams& p) {
        return "NetworkParams(N=" + std::to_string(p.total_nodes()) +
               ", K=" + std::to_string(p.selection_pool()) +
               ", M=" + std::to_string(p.sybil_ids()) +
               ", M_sel=" + std::to_string(p.sybil_selected()) +
               ", n=" + std::to_string(p.committee_size()) + ")";
      });

  m.def(
      "validate",
      [](const py::dict& d) { return NetworkParams::validate(raw_from_dict(d)); },
      py::arg("scenario"),
      "Validate a scenario mapping (keys N, K, M, M_sel, n, r, R, N_s, optional label)");

  m.def(
      "binomial", [](std::int64_t n, std::int64_t k) { return big_to_py(binomial(n, k)); },
      py::arg("n"), py::arg("k"), "Exact binomial coefficient C(n, k)");

  m.def(
      "hypergeom_pmf",
      [](std::int64_t population, std::int64_t successes, std::int64_t draws, std::int64_t m) {
        return pmf(HypergeomSpec(population, successes, draws), m);
      },
      py::arg("population"), py::arg("successes"), py::arg("draws"), py::arg("m"));
  m.def(
      "hypergeom_tail",
      [](std::int64_t population, std::int64_t successes, std::int64_t draws, std::int64_t m) {
        return tail_at_least(HypergeomSpec(population, successes, draws), m);
      },
      py::arg("population"), py::arg("successes"), py::arg("draws"), py::arg("m"),
      "P(X >= m) for the hypergeometric draw");

  m.def(
      "pool_breach_threshold",
      [](const NetworkParams& params, const std::string& mode) {
        return pool_breach_threshold(params, parse_threshold_mode(mode));
      },
      py::arg("params"), py::arg("mode") = "strict");

  m.def(
      "pgfa_failure_prob",
      [](const NetworkParams& params, bool spread_across_pool) {
        return pgfa_failure_prob(params, spread_across_pool
                                             ? RemainderModel::spread_across_pool
                                             : RemainderModel::committee_slots_only);
      },
      py::arg("params"), py::arg("spread_across_pool") = false,
      "P' via generating-function coefficient extraction");
  m.def("pgfa_from_counts", &pgfa_failure_from_counts, py::arg("committees"),
        py::arg("committee_size"), py::arg("capacity"), py::arg("sybils"));

  m.def("jhda_exact", &jhda_exact, py::arg("params"),
        py::arg("budget") = kDefaultEnumerationBudget,
        "P' via exact joint enumeration (throws BudgetExceeded past the budget)");
  m.def("jhda_from_counts", &jhda_exact_from_counts, py::arg("committees"),
        py::arg("committee_size"), py::arg("capacity"), py::arg("sybils"),
        py::arg("budget") = kDefaultEnumerationBudget);
  m.def(
      "jhda_trials",
      [](const NetworkParams& params, std::int64_t trials, std::uint64_t seed) {
        return estimate_to_dict(jhda_trials(params, TrialConfig{trials, seed}));
      },
      py::arg("params"), py::arg("trials"), py::arg("seed") = 1);

  m.def(
      "simulate_epochs",
      [](const NetworkParams& params, std::int64_t epochs, std::int64_t threshold,
         std::uint64_t seed, const std::string& mode, unsigned workers) {
        return outcome_to_dict(simulate_epochs_parallel(params, epochs, threshold, seed,
                                                        parse_sim_mode(mode), workers));
      },
      py::arg("params"), py::arg("epochs"), py::arg("threshold"), py::arg("seed") = 1,
      py::arg("mode") = "fixed", py::arg("workers") = 1);

  m.def("successful_attack_prob", &successful_attack_prob, py::arg("params"),
        py::arg("threshold"));
  m.def(
      "bcp_comparator",
      [](const NetworkParams& params) { return rational_to_py(bcp_comparator(params)); },
      py::arg("params"), "Committees times first-committee failure; may exceed 1");
  m.def(
      "years_to_fail",
      [](const ExactProb& p_fail, std::int64_t rounds_per_year) {
        return duration_to_py(years_to_fail(p_fail, rounds_per_year));
      },
      py::arg("p_fail"), py::arg("rounds_per_year"),
      "Fraction of years, or float('inf') when the failure probability is zero");

  m.def(
      "analyze",
      [](const py::dict& scenario, const std::string& method, const std::string& threshold_mode,
         const std::string& secure_years, std::uint64_t budget, std::int64_t trials,
         std::uint64_t seed, bool include_exact) {
        const NetworkParams params = NetworkParams::validate(raw_from_dict(scenario));
        AnalysisOptions options;
        options.method = parse_method(method);
        options.threshold_mode = parse_threshold_mode(threshold_mode);
        options.secure_years = parse_rational_text(secure_years);
        options.budget = budget;
        options.trials = TrialConfig{trials, seed};
        return json_to_py(report_json(analyze(params, options), include_exact));
      },
      py::arg("scenario"), py::arg("method") = "pgfa", py::arg("threshold_mode") = "strict",
      py::arg("secure_years") = "1", py::arg("budget") = kDefaultEnumerationBudget,
      py::arg("trials") = 1'000'000, py::arg("seed") = 1, py::arg("include_exact") = false,
      "Full security report as a dict with the same fields as the CLI JSON");
}
