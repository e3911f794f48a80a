#pragma once

// End-to-end Monte-Carlo oracle of the two-stage model: per epoch, draw the
// selection pool from the ID pool, then scatter Sybil markers over committee
// slots, tallying pool breaches, committee takeovers, and joint failures.

#include <cstdint>
#include <string>
#include <vector>

#include "shardsec/params.hpp"

namespace shardsec {

// fixed_sybil_count: exactly M_sel Sybil IDs enter the selection pool every
// epoch (the worst-case assumption behind the analytical P'). sampled_sybil_count:
// the stage-1 hypergeometric draw decides how many do.
enum class SimMode { fixed_sybil_count, sampled_sybil_count };

std::string sim_mode_label(SimMode mode);
SimMode parse_sim_mode(const std::string& text);  // throws ValidationError

struct SimOutcome {
  std::int64_t epochs = 0;
  std::int64_t pool_breaches = 0;      // stage-1 Sybil draws >= threshold
  std::int64_t takeover_failures = 0;  // some committee above capacity
  std::int64_t joint_failures = 0;     // both in the same epoch
  // committee_histogram[s] = number of (epoch, committee) pairs whose
  // committee held exactly s Sybil IDs.
  std::vector<std::int64_t> committee_histogram;
  std::uint64_t seed = 0;
  std::string generator;
  SimMode mode = SimMode::fixed_sybil_count;

  // Tally merge; associative and commutative.
  void merge(const SimOutcome& other);
};

SimOutcome simulate_epochs(const NetworkParams& params, std::int64_t epochs,
                           std::int64_t threshold, std::uint64_t seed,
                           SimMode mode = SimMode::fixed_sybil_count);

// Epochs sharded over `workers` streams derived from the seed; workers <= 1
// is the plain path.
SimOutcome simulate_epochs_parallel(const NetworkParams& params, std::int64_t epochs,
                                    std::int64_t threshold, std::uint64_t seed, SimMode mode,
                                    unsigned workers);

std::string outcome_json(const SimOutcome& outcome);
std::string histogram_csv(const SimOutcome& outcome);

}  // namespace shardsec
