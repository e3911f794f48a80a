#pragma once

// Exact hypergeometric PMF and upper-tail probabilities for the Sybil-ID
// draw from the ID pool into the selection pool.

#include <cstdint>

#include "shardsec/exactmath.hpp"
#include "shardsec/params.hpp"

namespace shardsec {

struct HypergeomSpec {
  std::int64_t population;  // Lambda
  std::int64_t successes;   // marked (Sybil) IDs
  std::int64_t draws;       // K

  // Throws std::domain_error unless 0 <= successes <= population and
  // 0 <= draws <= population.
  HypergeomSpec(std::int64_t population, std::int64_t successes, std::int64_t draws);
};

// Smallest / largest draw count with nonzero probability.
std::int64_t support_min(const HypergeomSpec& spec);
std::int64_t support_max(const HypergeomSpec& spec);

// P(X = m): C(successes, m) * C(population - successes, draws - m) / C(population, draws).
ExactProb pmf(const HypergeomSpec& spec, std::int64_t m);

// P(X >= m), summed over the nonzero support only. Equals one for
// m <= support_min(spec).
ExactProb tail_at_least(const HypergeomSpec& spec, std::int64_t m);

// The stage-1 draw of the scenario: K IDs from the Lambda-sized ID pool with
// M of them Sybil.
HypergeomSpec pool_spec(const NetworkParams& params);

}  // namespace shardsec
