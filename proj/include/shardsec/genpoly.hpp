#pragma once

// Generating-function route to the committee-takeover probability: build the
// single-committee polynomial, raise it to the committee count with truncated
// binary exponentiation, and read the safe-assignment count off one
// coefficient.

#include <cstdint>
#include <optional>
#include <vector>

#include "shardsec/exactmath.hpp"
#include "shardsec/params.hpp"

namespace shardsec {

// Dense polynomial with non-negative big-integer coefficients (they count
// configurations). Canonical form: trailing zeros trimmed; when a degree cap
// is attached, coefficients above it have been discarded.
class BigPoly {
 public:
  BigPoly() = default;  // zero polynomial

  // Throws std::domain_error on a negative coefficient.
  explicit BigPoly(std::vector<BigInt> coeffs,
                   std::optional<std::int64_t> degree_cap = std::nullopt);

  static BigPoly one();

  std::int64_t degree() const { return static_cast<std::int64_t>(coeffs_.size()) - 1; }
  const BigInt& coefficient(std::int64_t m) const;
  const std::vector<BigInt>& coefficients() const { return coeffs_; }
  std::optional<std::int64_t> degree_cap() const { return cap_; }
  bool is_zero() const { return coeffs_.empty(); }

  // Equality is on coefficients; the cap is bookkeeping.
  friend bool operator==(const BigPoly& a, const BigPoly& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const BigPoly& a, const BigPoly& b) { return !(a == b); }

 private:
  std::vector<BigInt> coeffs_;
  std::optional<std::int64_t> cap_;
};

// sum_{i=0}^{cap} C(n, i) x^i — the ways one committee of size n can absorb
// up to `cap` Sybil IDs. Throws std::domain_error unless 0 <= cap <= n.
BigPoly committee_poly(std::int64_t n, std::int64_t cap);

// Convolution, truncated above `cap` when given. A cap carried by either
// operand also bounds the result (coefficients beyond an operand's cap are
// unknown, so the product's are too).
BigPoly poly_mul(const BigPoly& a, const BigPoly& b,
                 std::optional<std::int64_t> cap = std::nullopt);

// p^exponent truncated to degree `cap`, by binary exponentiation with
// per-step truncation. Requires exponent >= 1 and cap >= 0.
BigPoly poly_pow(const BigPoly& p, std::int64_t exponent, std::int64_t cap);

// Coefficient of x^m; zero beyond the stored degree.
BigInt coefficient(const BigPoly& p, std::int64_t m);

// Whether Sybil IDs may also land on selection-pool slots left over after
// committee assignment (K - lambda*n of them). The leftover slots have no
// capacity constraint; by default Sybils are modelled on committee slots
// only, which matches the generating function's support.
enum class RemainderModel { committee_slots_only, spread_across_pool };

// P' for raw counts: 1 - [x^sybils] psi(x)^committees / C(committees*size, sybils).
// Degenerate cases: sybils == 0 -> 0; sybils > committees*size -> 1.
ExactProb pgfa_failure_from_counts(std::int64_t committees, std::int64_t committee_size,
                                   std::int64_t capacity, std::int64_t sybils);

// P' for a validated parameter set, capacity = floor(n*r).
ExactProb pgfa_failure_prob(const NetworkParams& params,
                            RemainderModel model = RemainderModel::committee_slots_only);

}  // namespace shardsec
