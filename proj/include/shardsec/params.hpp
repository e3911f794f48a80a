#pragma once

// Protocol parameter vector shared by every analysis, with validation of all
// structural invariants and the derived quantities (ID pool size, committee
// count, per-committee Sybil capacity).

#include <cstdint>
#include <stdexcept>
#include <string>

#include "shardsec/exactmath.hpp"

namespace shardsec {

// Raw inputs exactly as a scenario file states them, before validation.
struct RawParams {
  std::int64_t total_nodes = 0;       // N
  std::int64_t selection_pool = 0;    // K, IDs admitted to the selection pool
  std::int64_t sybil_ids = 0;         // M, Sybil IDs in the ID pool
  std::int64_t sybil_selected = 0;    // M_sel, Sybil IDs in the selection pool
  std::int64_t committee_size = 0;    // n
  Rational committee_resiliency;      // r, in (0,1)
  Rational selection_resiliency;      // R, in (0,1)
  std::int64_t rounds_per_year = 0;   // N_s
  std::string label;

  friend bool operator==(const RawParams&, const RawParams&) = default;
};

// A violated invariant, reported by name so misconfiguration is
// distinguishable from formula bugs.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::string invariant)
      : std::runtime_error(invariant), invariant_(std::move(invariant)) {}
  ValidationError(std::string invariant, const std::string& detail)
      : std::runtime_error(invariant + " (" + detail + ")"), invariant_(std::move(invariant)) {}
  const std::string& invariant() const { return invariant_; }

 private:
  std::string invariant_;
};

class NetworkParams {
 public:
  // Checks every invariant and populates the derived fields. Throws
  // ValidationError naming the first violated invariant.
  static NetworkParams validate(const RawParams& raw);

  std::int64_t total_nodes() const { return raw_.total_nodes; }
  std::int64_t selection_pool() const { return raw_.selection_pool; }
  std::int64_t sybil_ids() const { return raw_.sybil_ids; }
  std::int64_t sybil_selected() const { return raw_.sybil_selected; }
  std::int64_t committee_size() const { return raw_.committee_size; }
  const Rational& committee_resiliency() const { return raw_.committee_resiliency; }
  const Rational& selection_resiliency() const { return raw_.selection_resiliency; }
  std::int64_t rounds_per_year() const { return raw_.rounds_per_year; }
  const std::string& label() const { return raw_.label; }

  // Derived, always recomputed from the primaries.
  std::int64_t id_pool() const { return id_pool_; }                    // Lambda = N - 1 + M
  std::int64_t committee_count() const { return committee_count_; }   // lambda = floor(K / n)
  std::int64_t leftover_ids() const { return leftover_ids_; }         // K - lambda * n
  std::int64_t committee_capacity() const { return committee_capacity_; }  // floor(n * r)

  const RawParams& raw() const { return raw_; }

  friend bool operator==(const NetworkParams&, const NetworkParams&) = default;

 private:
  explicit NetworkParams(RawParams raw);

  RawParams raw_;
  std::int64_t id_pool_ = 0;
  std::int64_t committee_count_ = 0;
  std::int64_t leftover_ids_ = 0;
  std::int64_t committee_capacity_ = 0;
};

// How the pool-breach count m* derives from R*K. `strict` (breach only when
// the Sybil count exceeds floor(R*K), mirroring the committee rule) is the
// default; it is the convention the reference scenario values confirm.
enum class ThresholdMode { floor_rk, strict, ceil };

std::int64_t pool_breach_threshold(const NetworkParams& params,
                                   ThresholdMode mode = ThresholdMode::strict);

std::string threshold_mode_label(ThresholdMode mode);
ThresholdMode parse_threshold_mode(const std::string& text);  // throws ValidationError

// Parses "1/3", "0.333", or "42" into an exact rational. Decimal text is the
// exact decimal value ("0.333" -> 333/1000, never 1/3). Throws
// std::invalid_argument on malformed input.
Rational parse_rational_text(const std::string& text);

// floor(x * count) for non-negative rational x.
std::int64_t floor_scaled(const Rational& x, std::int64_t count);

}  // namespace shardsec
