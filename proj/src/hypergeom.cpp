#include "shardsec/hypergeom.hpp"

#include <algorithm>
#include <stdexcept>

namespace shardsec {

HypergeomSpec::HypergeomSpec(std::int64_t population_, std::int64_t successes_,
                             std::int64_t draws_)
    : population(population_), successes(successes_), draws(draws_) {
  if (population < 0) throw std::domain_error("hypergeometric population must be non-negative");
  if (successes < 0 || successes > population)
    throw std::domain_error("hypergeometric successes outside [0, population]");
  if (draws < 0 || draws > population)
    throw std::domain_error("hypergeometric draws outside [0, population]");
}

std::int64_t support_min(const HypergeomSpec& spec) {
  return std::max<std::int64_t>(0, spec.draws - (spec.population - spec.successes));
}

std::int64_t support_max(const HypergeomSpec& spec) {
  return std::min(spec.successes, spec.draws);
}

ExactProb pmf(const HypergeomSpec& spec, std::int64_t m) {
  if (m < support_min(spec) || m > support_max(spec)) return ExactProb::zero();
  return prob_from_ratio(
      binomial(spec.successes, m) * binomial(spec.population - spec.successes, spec.draws - m),
      binomial(spec.population, spec.draws));
}

ExactProb tail_at_least(const HypergeomSpec& spec, std::int64_t m) {
  const std::int64_t lo = std::max(m, support_min(spec));
  const std::int64_t hi = support_max(spec);
  BigInt favourable = 0;
  for (std::int64_t s = lo; s <= hi; ++s) {
    favourable +=
        binomial(spec.successes, s) * binomial(spec.population - spec.successes, spec.draws - s);
  }
  return prob_from_ratio(favourable, binomial(spec.population, spec.draws));
}

HypergeomSpec pool_spec(const NetworkParams& params) {
  return HypergeomSpec(params.id_pool(), params.sybil_ids(), params.selection_pool());
}

}  // namespace shardsec
