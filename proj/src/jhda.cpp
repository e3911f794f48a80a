#include "shardsec/jhda.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include "shardsec/sampling.hpp"

namespace shardsec {

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

struct NestedSum {
  std::int64_t committees;
  std::int64_t committee_size;
  std::int64_t capacity;

  BigInt safe_count(std::int64_t level, std::int64_t remaining) const {
    if (level == committees) return remaining == 0 ? 1 : 0;
    BigInt total = 0;
    const std::int64_t hi = std::min(capacity, remaining);
    for (std::int64_t m = 0; m <= hi; ++m) {
      total += binomial(committee_size, m) * safe_count(level + 1, remaining - m);
    }
    return total;
  }
};

std::int64_t run_trials(const NetworkParams& params, std::int64_t trials, std::uint64_t seed) {
  const std::int64_t committees = params.committee_count();
  const std::int64_t size = params.committee_size();
  const std::int64_t capacity = params.committee_capacity();
  const std::int64_t sybils = params.sybil_selected();
  const std::int64_t slots = committees * size;

  if (sybils > slots) return trials;  // pigeonhole: every assignment fails

  SampleRng rng(seed);
  WithoutReplacementSampler sampler(static_cast<std::int32_t>(slots));
  std::vector<std::int32_t> counts(static_cast<std::size_t>(committees), 0);
  std::int64_t failures = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    std::fill(counts.begin(), counts.end(), 0);
    bool failed = false;
    sampler.draw(static_cast<std::int32_t>(sybils), rng, [&](std::int32_t slot) {
      const auto committee = static_cast<std::size_t>(slot / size);
      if (++counts[committee] > capacity) failed = true;
    });
    if (failed) ++failures;
  }
  return failures;
}

TrialEstimate make_estimate(std::int64_t failures, std::int64_t trials, std::uint64_t seed) {
  TrialEstimate est;
  est.failures = failures;
  est.trials = trials;
  est.seed = seed;
  est.generator = SampleRng::kGeneratorId;
  est.p_hat = static_cast<double>(failures) / static_cast<double>(trials);
  est.std_err = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(trials));
  return est;
}

}  // namespace

std::uint64_t enumeration_state_estimate(std::int64_t committees, std::int64_t capacity,
                                         std::int64_t sybils) {
  std::uint64_t per_level = 1;
  for (std::int64_t i = 0; i < committees; ++i) {
    per_level = saturating_mul(per_level, static_cast<std::uint64_t>(capacity) + 1);
  }
  // compositions of `sybils` into `committees` parts, ignoring the cap
  const BigInt compositions = binomial(sybils + committees - 1, committees - 1);
  std::uint64_t by_compositions = std::numeric_limits<std::uint64_t>::max();
  if (compositions <= std::numeric_limits<std::uint64_t>::max()) {
    by_compositions = compositions.convert_to<std::uint64_t>();
  }
  return std::min(per_level, by_compositions);
}

ExactProb jhda_exact_from_counts(std::int64_t committees, std::int64_t committee_size,
                                 std::int64_t capacity, std::int64_t sybils,
                                 std::uint64_t budget) {
  if (committees < 1) throw std::domain_error("committee count must be >= 1");
  if (committee_size < 0 || capacity < 0 || capacity > committee_size) {
    throw std::domain_error("capacity outside [0, committee size]");
  }
  if (sybils < 0) throw std::domain_error("sybil count must be non-negative");
  const std::int64_t slots = committees * committee_size;
  if (sybils > slots) return ExactProb::one();

  const std::uint64_t estimate = enumeration_state_estimate(committees, capacity, sybils);
  if (estimate > budget) throw BudgetExceeded(estimate, budget);

  const NestedSum sum{committees, committee_size, capacity};
  return prob_from_ratio(sum.safe_count(0, sybils), binomial(slots, sybils)).complement();
}

ExactProb jhda_exact(const NetworkParams& params, std::uint64_t budget) {
  return jhda_exact_from_counts(params.committee_count(), params.committee_size(),
                                params.committee_capacity(), params.sybil_selected(), budget);
}

TrialEstimate jhda_trials(const NetworkParams& params, const TrialConfig& config) {
  if (config.trials < 1) throw std::domain_error("trials must be >= 1");
  return make_estimate(run_trials(params, config.trials, config.seed), config.trials,
                       config.seed);
}

TrialEstimate jhda_trials_parallel(const NetworkParams& params, const TrialConfig& config,
                                   unsigned workers) {
  if (config.trials < 1) throw std::domain_error("trials must be >= 1");
  if (workers <= 1) return jhda_trials(params, config);
  const auto worker_count =
      std::min<std::uint64_t>(workers, static_cast<std::uint64_t>(config.trials));
  std::vector<std::int64_t> failures(worker_count, 0);
  std::vector<std::thread> threads;
  threads.reserve(worker_count);
  const std::int64_t chunk = config.trials / static_cast<std::int64_t>(worker_count);
  std::int64_t assigned = 0;
  for (std::uint64_t w = 0; w < worker_count; ++w) {
    const std::int64_t count =
        (w + 1 == worker_count) ? config.trials - assigned : chunk;
    assigned += count;
    threads.emplace_back([&, w, count] {
      failures[w] = run_trials(params, count, derive_stream_seed(config.seed, w));
    });
  }
  for (auto& t : threads) t.join();
  std::int64_t total = 0;
  for (std::int64_t f : failures) total += f;
  return make_estimate(total, config.trials, config.seed);
}

}  // namespace shardsec
