#pragma once

// Scenario and sweep file handling plus report rendering. Scenarios are flat
// records with fields N, K, M, M_sel, n, r, R, N_s (+ optional label), as a
// JSON object or a single CSV row. All emission is byte-deterministic.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "shardsec/attack.hpp"
#include "shardsec/params.hpp"

namespace shardsec {

// File-system level failure (missing file, unreadable, unwritable).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::filesystem::path& file);      // throws IoError
void write_file(const std::filesystem::path& file, const std::string& content);

RawParams scenario_from_json(const nlohmann::json& j);
RawParams scenario_from_csv(const std::string& text);
// Sniffs JSON vs CSV by the first non-space character.
RawParams load_scenario(const std::filesystem::path& file);

struct SweepSpec {
  RawParams base;
  std::string axis;                  // one of the eight parameter fields
  std::vector<std::string> values;   // literal value texts, in order
  std::vector<std::string> outputs;  // subset of P, P_prime, P_double_prime, A, bcp
  bool tie_sybil_counts = false;     // axis M also sets M_sel (worst case)
};

SweepSpec sweep_from_json(const nlohmann::json& j);
SweepSpec load_sweep(const std::filesystem::path& file);

// Returns base with `axis` replaced by `value` (and M_sel tied to M when
// requested). The result still needs validation.
RawParams apply_axis(RawParams base, const std::string& axis, const std::string& value,
                     bool tie_sybil_counts);

// Canonical exact text: "333/1000", or "42" for integers.
std::string rational_text(const Rational& x);

nlohmann::ordered_json report_json(const AttackSummary& summary, bool include_exact = false);
std::string report_csv_header();
std::string report_csv_row(const AttackSummary& summary);

// One CSV row per swept value, header included, probabilities in 3-digit
// scientific notation. Points are evaluated in parallel but emitted in input
// order. A failing point aborts with its axis value in the message.
std::string run_sweep_csv(const SweepSpec& spec, const AnalysisOptions& options,
                          unsigned jobs = 0);

}  // namespace shardsec
