#pragma once

// Joint-hypergeometric baseline: the committee-takeover probability as a
// literal nested sum over per-committee Sybil counts. Exact but exponential
// in the committee count, so it doubles as the correctness oracle for the
// generating-function route and as its complexity foil. A trial-based
// estimator covers instances beyond the enumeration budget.

#include <cstdint>
#include <stdexcept>
#include <string>

#include "shardsec/exactmath.hpp"
#include "shardsec/params.hpp"

namespace shardsec {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 100'000'000;

// Raised when the nested-sum enumeration would visit more states than the
// budget allows; callers should switch to the generating-function route or
// the trial estimator.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t estimated_states, std::uint64_t budget)
      : std::runtime_error("joint enumeration needs ~" + std::to_string(estimated_states) +
                           " states, budget is " + std::to_string(budget) +
                           "; use the generating-function route or trial estimation"),
        estimated_states(estimated_states),
        budget(budget) {}

  std::uint64_t estimated_states;
  std::uint64_t budget;
};

// A-priori bound on enumeration nodes: min((cap+1)^committees,
// C(sybils+committees-1, committees-1)), saturated at UINT64_MAX.
std::uint64_t enumeration_state_estimate(std::int64_t committees, std::int64_t capacity,
                                         std::int64_t sybils);

// Exact P' by nested summation over all (m_1, ..., m_lambda) with each
// m_i <= capacity and sum m_i = sybils. Throws BudgetExceeded when the state
// estimate exceeds `budget`.
ExactProb jhda_exact_from_counts(std::int64_t committees, std::int64_t committee_size,
                                 std::int64_t capacity, std::int64_t sybils,
                                 std::uint64_t budget = kDefaultEnumerationBudget);

ExactProb jhda_exact(const NetworkParams& params,
                     std::uint64_t budget = kDefaultEnumerationBudget);

struct TrialConfig {
  std::int64_t trials = 1;
  std::uint64_t seed = 0;
};

struct TrialEstimate {
  double p_hat = 0.0;
  double std_err = 0.0;
  std::int64_t failures = 0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  std::string generator;
};

// Monte-Carlo estimate of P': each trial assigns the selected Sybil IDs to
// committee slots uniformly without replacement and checks whether any
// committee exceeds its capacity. Bit-reproducible for a given seed.
TrialEstimate jhda_trials(const NetworkParams& params, const TrialConfig& config);

// Trials sharded across `workers` independent streams derived from the seed;
// tallies merge order-independently. workers <= 1 is the plain single-stream
// path.
TrialEstimate jhda_trials_parallel(const NetworkParams& params, const TrialConfig& config,
                                   unsigned workers);

}  // namespace shardsec
