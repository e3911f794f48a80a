// Command-line front end: single-scenario analysis, parameter sweeps, the
// exact-oracle verification grid, Monte-Carlo simulation, and a benchmark
// contrasting the generating-function route with joint enumeration.
//
// Exit codes: 0 success, 2 validation failure (named invariant), 3 I/O
// failure, 4 verification mismatch.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "shardsec/attack.hpp"
#include "shardsec/genpoly.hpp"
#include "shardsec/hypergeom.hpp"
#include "shardsec/jhda.hpp"
#include "shardsec/scenario_io.hpp"
#include "shardsec/simulate.hpp"

namespace {

using namespace shardsec;

struct VerifyFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t budget_from_env() {
  const char* raw = std::getenv("SHARDSEC_BUDGET");
  if (raw == nullptr || *raw == '\0') return kDefaultEnumerationBudget;
  try {
    const unsigned long long value = std::stoull(raw);
    if (value == 0) throw std::invalid_argument("zero");
    return value;
  } catch (const std::exception&) {
    throw ValidationError("malformed SHARDSEC_BUDGET", raw);
  }
}

std::string prob_ratio_text(const ExactProb& p) {
  return p.numerator().str() + "/" + p.denominator().str();
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

struct AnalyzeFlags {
  std::string file;
  std::string method = "pgfa";
  std::string threshold_mode = "strict";
  std::string secure_years = "1";
  std::int64_t trials = 1'000'000;
  std::uint64_t seed = 1;
  std::string csv_file;
  bool exact = false;
};

AttackSummary run_analysis(const AnalyzeFlags& flags) {
  const NetworkParams params = NetworkParams::validate(load_scenario(flags.file));
  AnalysisOptions options;
  options.method = parse_method(flags.method);
  options.threshold_mode = parse_threshold_mode(flags.threshold_mode);
  try {
    options.secure_years = parse_rational_text(flags.secure_years);
  } catch (const std::invalid_argument&) {
    throw ValidationError("malformed secure-years value", flags.secure_years);
  }
  options.budget = budget_from_env();
  if (flags.trials < 1) throw ValidationError("trials must be >= 1");
  options.trials = TrialConfig{flags.trials, flags.seed};
  return analyze(params, options);
}

void cmd_analyze(const AnalyzeFlags& flags) {
  const AttackSummary summary = run_analysis(flags);
  std::cout << report_json(summary, flags.exact).dump(2) << "\n";
  if (!flags.csv_file.empty()) {
    std::string existing;
    try {
      existing = read_file(flags.csv_file);
    } catch (const IoError&) {
      existing.clear();  // new file
    }
    std::string content = existing;
    if (content.empty()) content = report_csv_header() + "\n";
    content += report_csv_row(summary) + "\n";
    write_file(flags.csv_file, content);
  }
}

struct SweepFlags {
  std::string file;
  std::string method = "pgfa";
  std::string threshold_mode = "strict";
  std::int64_t trials = 1'000'000;
  std::uint64_t seed = 1;
  unsigned jobs = 0;
};

void cmd_sweep(const SweepFlags& flags) {
  const SweepSpec spec = load_sweep(flags.file);
  AnalysisOptions options;
  options.method = parse_method(flags.method);
  options.threshold_mode = parse_threshold_mode(flags.threshold_mode);
  options.budget = budget_from_env();
  if (flags.trials < 1) throw ValidationError("trials must be >= 1");
  options.trials = TrialConfig{flags.trials, flags.seed};
  std::cout << run_sweep_csv(spec, options, flags.jobs);
}

struct VerifyFlags {
  std::int64_t max_committees = 4;
  std::int64_t min_size = 2;
  std::int64_t max_size = 8;
  std::int64_t max_sybils = 12;
  bool quiet = false;
  bool force_wrong_denominator = false;  // negative control for the checker
  std::string sim_file;
  std::int64_t sim_epochs = 0;
  std::string sim_mode = "fixed";
  std::string threshold_mode = "strict";
  std::uint64_t seed = 1;
};

void cmd_verify(const VerifyFlags& flags) {
  const std::uint64_t budget = budget_from_env();
  std::int64_t points = 0;
  std::int64_t mismatches = 0;
  for (std::int64_t committees = 1; committees <= flags.max_committees; ++committees) {
    for (std::int64_t size = flags.min_size; size <= flags.max_size; ++size) {
      for (std::int64_t cap = 0; cap <= size; ++cap) {
        for (std::int64_t sybils = 0; sybils <= flags.max_sybils; ++sybils) {
          ++points;
          ExactProb via_poly;
          if (flags.force_wrong_denominator && sybils > 0 &&
              sybils <= committees * size) {
            const BigPoly psi = committee_poly(size, cap);
            const BigInt safe = poly_pow(psi, committees, sybils).coefficient(sybils);
            via_poly =
                prob_from_ratio(safe, binomial(committees * size + 1, sybils)).complement();
          } else {
            via_poly = pgfa_failure_from_counts(committees, size, cap, sybils);
          }
          const ExactProb via_sum =
              jhda_exact_from_counts(committees, size, cap, sybils, budget);
          const bool match = via_poly == via_sum;
          if (!match) ++mismatches;
          if (!flags.quiet || !match) {
            std::cout << "lambda=" << committees << " n=" << size << " cap=" << cap
                      << " sybils=" << sybils << ": poly=" << prob_ratio_text(via_poly)
                      << " sum=" << prob_ratio_text(via_sum)
                      << (match ? " match" : " MISMATCH") << "\n";
          }
        }
      }
    }
  }
  if (points == 0) throw ValidationError("empty grid");
  std::cout << "verified " << points << " points: " << mismatches << " mismatches\n";

  if (!flags.sim_file.empty() || flags.sim_epochs > 0) {
    if (flags.sim_file.empty() || flags.sim_epochs < 1) {
      throw ValidationError("simulation check needs both --sim and --sim-epochs");
    }
    const NetworkParams params = NetworkParams::validate(load_scenario(flags.sim_file));
    const std::int64_t threshold =
        pool_breach_threshold(params, parse_threshold_mode(flags.threshold_mode));
    const SimOutcome outcome = simulate_epochs(params, flags.sim_epochs, threshold,
                                               flags.seed, parse_sim_mode(flags.sim_mode));
    const double epochs = static_cast<double>(outcome.epochs);
    const auto band_check = [&](const char* name, double observed, double expected) {
      const double sigma = std::sqrt(expected * (1.0 - expected) / epochs);
      const bool ok = std::abs(observed - expected) <= 4.0 * sigma;
      std::cout << name << ": observed=" << observed << " expected=" << expected
                << " sigma=" << sigma << (ok ? " within-4sigma" : " OUTSIDE-4sigma") << "\n";
      if (!ok) ++mismatches;
    };
    band_check("takeover", static_cast<double>(outcome.takeover_failures) / epochs,
               pgfa_failure_prob(params).to_double());
    band_check("pool_breach", static_cast<double>(outcome.pool_breaches) / epochs,
               tail_at_least(pool_spec(params), threshold).to_double());
  }

  if (mismatches > 0) {
    throw VerifyFailure(std::to_string(mismatches) + " verification mismatches");
  }
}

struct BenchFlags {
  std::string file;
  std::int64_t reps = 0;
};

void cmd_bench(const BenchFlags& flags) {
  if (flags.reps < 1) throw ValidationError("repetitions must be >= 1");
  const NetworkParams params = NetworkParams::validate(load_scenario(flags.file));
  const std::uint64_t budget = budget_from_env();

  double total_ms = 0.0;
  double min_ms = 0.0;
  ExactProb takeover;
  for (std::int64_t rep = 0; rep < flags.reps; ++rep) {
    const auto start = std::chrono::steady_clock::now();
    takeover = pgfa_failure_prob(params);
    const double ms = elapsed_ms(start);
    total_ms += ms;
    min_ms = rep == 0 ? ms : std::min(min_ms, ms);
  }

  nlohmann::ordered_json j;
  j["label"] = params.label();
  j["reps"] = flags.reps;
  j["pgfa"] = {
      {"mean_ms", total_ms / static_cast<double>(flags.reps)},
      {"min_ms", min_ms},
      {"result", to_scientific(takeover, 3)},
  };
  const std::uint64_t states = enumeration_state_estimate(
      params.committee_count(), params.committee_capacity(), params.sybil_selected());
  if (states > budget) {
    j["jhda_exact"] = {
        {"refused", true},
        {"estimated_states", states},
        {"budget", budget},
    };
  } else {
    const auto start = std::chrono::steady_clock::now();
    const ExactProb exact = jhda_exact(params, budget);
    j["jhda_exact"] = {
        {"refused", false},
        {"estimated_states", states},
        {"ms", elapsed_ms(start)},
        {"result", to_scientific(exact, 3)},
        {"matches_pgfa", exact == takeover},
    };
  }
  std::cout << j.dump(2) << "\n";
}

struct SimulateFlags {
  std::string file;
  std::int64_t epochs = 0;
  std::uint64_t seed = 1;
  std::string sim_mode = "fixed";
  std::string threshold_mode = "strict";
  std::string histogram_file;
  unsigned workers = 1;
};

void cmd_simulate(const SimulateFlags& flags) {
  if (flags.epochs < 1) throw ValidationError("epochs must be >= 1");
  const NetworkParams params = NetworkParams::validate(load_scenario(flags.file));
  const std::int64_t threshold =
      pool_breach_threshold(params, parse_threshold_mode(flags.threshold_mode));
  const SimOutcome outcome = simulate_epochs_parallel(
      params, flags.epochs, threshold, flags.seed, parse_sim_mode(flags.sim_mode),
      flags.workers);
  std::cout << outcome_json(outcome);
  if (!flags.histogram_file.empty()) write_file(flags.histogram_file, histogram_csv(outcome));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact security analysis of committee-based sharding against Sybil attacks"};
  app.require_subcommand(1);

  AnalyzeFlags analyze_flags;
  auto* analyze_cmd = app.add_subcommand("analyze", "Analyze one scenario file (JSON or CSV)");
  analyze_cmd->add_option("file", analyze_flags.file, "scenario file")->required();
  analyze_cmd->add_option("--method", analyze_flags.method, "P' method")
      ->check(CLI::IsMember({"pgfa", "jhda-exact", "jhda-trials"}));
  analyze_cmd->add_option("--threshold-mode", analyze_flags.threshold_mode,
                          "pool-breach threshold convention")
      ->check(CLI::IsMember({"floor_RK", "strict", "ceil"}));
  analyze_cmd->add_option("--secure-years", analyze_flags.secure_years,
                          "years-to-fail bar for the secure flag");
  analyze_cmd->add_option("--trials", analyze_flags.trials, "trials for jhda-trials");
  analyze_cmd->add_option("--seed", analyze_flags.seed, "RNG seed for jhda-trials");
  analyze_cmd->add_option("--csv", analyze_flags.csv_file, "append a CSV row to this file");
  analyze_cmd->add_flag("--exact", analyze_flags.exact, "include exact rationals in the JSON");
  analyze_cmd->callback([&] { cmd_analyze(analyze_flags); });

  SweepFlags sweep_flags;
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep one parameter, CSV to stdout");
  sweep_cmd->add_option("file", sweep_flags.file, "sweep spec file")->required();
  sweep_cmd->add_option("--method", sweep_flags.method, "P' method")
      ->check(CLI::IsMember({"pgfa", "jhda-exact", "jhda-trials"}));
  sweep_cmd->add_option("--threshold-mode", sweep_flags.threshold_mode,
                        "pool-breach threshold convention")
      ->check(CLI::IsMember({"floor_RK", "strict", "ceil"}));
  sweep_cmd->add_option("--trials", sweep_flags.trials, "trials for jhda-trials");
  sweep_cmd->add_option("--seed", sweep_flags.seed, "RNG seed for jhda-trials");
  sweep_cmd->add_option("--jobs", sweep_flags.jobs, "parallel workers (0 = all cores)");
  sweep_cmd->callback([&] { cmd_sweep(sweep_flags); });

  VerifyFlags verify_flags;
  auto* verify_cmd = app.add_subcommand(
      "verify", "Cross-check the polynomial route against exact joint enumeration");
  verify_cmd->add_option("--max-lambda", verify_flags.max_committees, "largest committee count");
  verify_cmd->add_option("--min-n", verify_flags.min_size, "smallest committee size");
  verify_cmd->add_option("--max-n", verify_flags.max_size, "largest committee size");
  verify_cmd->add_option("--max-sybils", verify_flags.max_sybils, "largest Sybil count");
  verify_cmd->add_flag("--quiet", verify_flags.quiet, "print mismatches and the summary only");
  verify_cmd
      ->add_flag("--force-wrong-denominator", verify_flags.force_wrong_denominator,
                 "negative control: misstate the polynomial-route denominator")
      ->group("");  // hidden
  verify_cmd->add_option("--sim", verify_flags.sim_file,
                         "scenario for an additional simulation band check");
  verify_cmd->add_option("--sim-epochs", verify_flags.sim_epochs, "epochs for the band check");
  verify_cmd->add_option("--sim-mode", verify_flags.sim_mode, "simulation mode")
      ->check(CLI::IsMember({"fixed", "sampled"}));
  verify_cmd->add_option("--threshold-mode", verify_flags.threshold_mode,
                         "pool-breach threshold convention")
      ->check(CLI::IsMember({"floor_RK", "strict", "ceil"}));
  verify_cmd->add_option("--seed", verify_flags.seed, "RNG seed for the band check");
  verify_cmd->callback([&] { cmd_verify(verify_flags); });

  BenchFlags bench_flags;
  auto* bench_cmd =
      app.add_subcommand("bench", "Time the polynomial route; enumerate only within budget");
  bench_cmd->add_option("file", bench_flags.file, "scenario file")->required();
  bench_cmd->add_option("--reps", bench_flags.reps, "repetitions")->required();
  bench_cmd->callback([&] { cmd_bench(bench_flags); });

  SimulateFlags simulate_flags;
  auto* simulate_cmd =
      app.add_subcommand("simulate", "Monte-Carlo epochs of the two-stage model");
  simulate_cmd->add_option("file", simulate_flags.file, "scenario file")->required();
  simulate_cmd->add_option("--epochs", simulate_flags.epochs, "epoch count")->required();
  simulate_cmd->add_option("--seed", simulate_flags.seed, "RNG seed");
  simulate_cmd->add_option("--sim-mode", simulate_flags.sim_mode, "fixed or sampled M'")
      ->check(CLI::IsMember({"fixed", "sampled"}));
  simulate_cmd->add_option("--threshold-mode", simulate_flags.threshold_mode,
                           "pool-breach threshold convention")
      ->check(CLI::IsMember({"floor_RK", "strict", "ceil"}));
  simulate_cmd->add_option("--histogram-csv", simulate_flags.histogram_file,
                           "write the per-committee Sybil-count histogram here");
  simulate_cmd->add_option("--workers", simulate_flags.workers, "parallel workers");
  simulate_cmd->callback([&] { cmd_simulate(simulate_flags); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const VerifyFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
