#include "shardsec/scenario_io.hpp"

#include <doctest.h>

#include <filesystem>

#include "oracles.hpp"

using namespace shardsec;

namespace {

const std::filesystem::path kScenarioDir = SHARDSEC_SCENARIO_DIR;

nlohmann::json reference_json() {
  return nlohmann::json::parse(R"({
    "label": "ref1", "N": 1000, "K": 800, "M": 200, "M_sel": 200,
    "n": 100, "r": 0.333, "R": 0.20, "N_s": 365
  })");
}

}  // namespace

TEST_CASE("scenario JSON parsing keeps decimals exact") {
  const RawParams raw = scenario_from_json(reference_json());
  CHECK(raw.total_nodes == 1000);
  CHECK(raw.committee_resiliency == Rational(333, 1000));
  CHECK(raw.selection_resiliency == Rational(1, 5));
  CHECK(raw.label == "ref1");
  // rationals may also arrive as strings
  auto j = reference_json();
  j["r"] = "1/3";
  CHECK(scenario_from_json(j).committee_resiliency == Rational(1, 3));
}

TEST_CASE("scenario parsing rejects unknown and missing fields") {
  auto extra = reference_json();
  extra["lambda"] = 8;  // derived, never an input
  CHECK_THROWS_AS(scenario_from_json(extra), ValidationError);

  auto missing = reference_json();
  missing.erase("N_s");
  try {
    scenario_from_json(missing);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.invariant() == "missing scenario field");
  }

  auto garbled = reference_json();
  garbled["n"] = "many";
  CHECK_THROWS_AS(scenario_from_json(garbled), ValidationError);
}

TEST_CASE("CSV scenarios parse like JSON ones") {
  const RawParams from_csv = scenario_from_csv(
      "N,K,M,M_sel,n,r,R,N_s,label\n"
      "1000,800,200,200,100,0.333,0.20,365,ref1\n");
  CHECK(from_csv == scenario_from_json(reference_json()));
  CHECK_THROWS_AS(scenario_from_csv("N,K\n1000\n"), ValidationError);
  CHECK_THROWS_AS(scenario_from_csv("just one line"), ValidationError);
}

TEST_CASE("shipped reference scenarios load and validate") {
  const RawParams raw = load_scenario(kScenarioDir / "ref1.json");
  const NetworkParams params = NetworkParams::validate(raw);
  CHECK(params.committee_count() == 8);
  CHECK(params.label() == "ref1");
  CHECK_THROWS_AS(load_scenario(kScenarioDir / "does_not_exist.json"), IoError);
}

TEST_CASE("sweep spec parsing") {
  const SweepSpec spec = load_sweep(kScenarioDir / "sweep_bcp.json");
  CHECK(spec.axis == "M");
  CHECK(spec.values.size() == 20);
  CHECK(spec.values.front() == "10");
  CHECK(spec.outputs == std::vector<std::string>{"P_double_prime", "bcp"});
  CHECK(spec.tie_sybil_counts);

  auto j = nlohmann::json::parse(R"({"base": {}, "axis": "M", "values": []})");
  j["base"] = reference_json();
  try {
    sweep_from_json(j);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.invariant() == "empty sweep");
  }

  j["values"] = {10, 20};
  j["axis"] = "lambda";
  CHECK_THROWS_AS(sweep_from_json(j), ValidationError);
  j["axis"] = "M";
  j["outputs"] = {"nonsense"};
  CHECK_THROWS_AS(sweep_from_json(j), ValidationError);
}

TEST_CASE("apply_axis replaces fields and can tie the Sybil counts") {
  const RawParams base = scenario_from_json(reference_json());
  const RawParams moved = apply_axis(base, "M", "50", true);
  CHECK(moved.sybil_ids == 50);
  CHECK(moved.sybil_selected == 50);
  const RawParams united = apply_axis(base, "r", "0.25", false);
  CHECK(united.committee_resiliency == Rational(1, 4));
}

TEST_CASE("report JSON carries the displayed values") {
  const NetworkParams params = NetworkParams::validate(scenario_from_json(reference_json()));
  const AttackSummary summary = analyze(params);
  const auto j = report_json(summary);
  CHECK(j.at("P") == "2.04e-06");
  CHECK(j.at("P_prime") == "1.56e-01");
  CHECK(j.at("P_double_prime") == "3.18e-07");
  CHECK(j.at("A") == "8623.62");
  CHECK(j.at("secure") == true);
  CHECK(j.at("params").at("lambda") == 8);
  CHECK(j.at("params").at("r") == "333/1000");
  // byte-stable
  CHECK(report_json(summary).dump(2) == j.dump(2));
  // exact rationals on demand
  const auto exact = report_json(summary, true);
  CHECK(exact.contains("exact"));
  CHECK(exact.at("exact").at("P_prime").get<std::string>().find('/') != std::string::npos);
}

TEST_CASE("report CSV row matches the header") {
  const NetworkParams params = NetworkParams::validate(scenario_from_json(reference_json()));
  const AttackSummary summary = analyze(params);
  const std::string header = report_csv_header();
  const std::string row = report_csv_row(summary);
  CHECK(std::count(header.begin(), header.end(), ',') ==
        std::count(row.begin(), row.end(), ','));
  CHECK(row.rfind("ref1,1000,800,200,200,100,8,333/1000,1/5,365,strict,161,PGFA,", 0) == 0);
  CHECK(row.find("2.04e-06") != std::string::npos);
  CHECK(row.find("8623.62") != std::string::npos);
}

TEST_CASE("rational_text canonical forms") {
  CHECK(rational_text(Rational(333, 1000)) == "333/1000");
  CHECK(rational_text(Rational(1, 5)) == "1/5");
  CHECK(rational_text(Rational(42)) == "42");
  CHECK(rational_text(Rational(0)) == "0");
}

TEST_CASE("sweep CSV is ordered, deterministic, and parallel-safe") {
  const SweepSpec spec = load_sweep(kScenarioDir / "sweep_sybil.json");
  const std::string serial = run_sweep_csv(spec, {}, 1);
  const std::string parallel = run_sweep_csv(spec, {}, 8);
  CHECK(serial == parallel);

  std::istringstream in(serial);
  std::string line;
  std::getline(in, line);
  CHECK(line == "M,P,P_prime,P_double_prime,A");
  // P column is monotone non-decreasing as the Sybil count grows
  Rational prev = -1;
  int rows = 0;
  while (std::getline(in, line)) {
    const auto first_comma = line.find(',');
    const auto second_comma = line.find(',', first_comma + 1);
    const std::string p_text = line.substr(first_comma + 1, second_comma - first_comma - 1);
    const Rational p = test::parse_scientific(p_text);
    CHECK(p >= prev);
    prev = p;
    ++rows;
  }
  CHECK(rows == 20);
}

TEST_CASE("sweep failures carry the axis value") {
  SweepSpec spec;
  spec.base = scenario_from_json(reference_json());
  spec.axis = "M";
  spec.values = {"100"};  // M < M_sel: invalid at this point
  spec.outputs = {"P"};
  try {
    run_sweep_csv(spec, {}, 1);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("M=100") != std::string::npos);
    CHECK(e.invariant() == "M_sel exceeds M");
  }
}
