#pragma once

// Headline quantities: successful-attack probability (pool breach times
// committee takeover), epoch failure via the joint-distribution route,
// expected rounds / years to failure, and the flawed committees-times-
// first-committee comparator that can exceed 1.

#include <cstdint>
#include <stdexcept>
#include <string>

#include "shardsec/exactmath.hpp"
#include "shardsec/genpoly.hpp"
#include "shardsec/jhda.hpp"
#include "shardsec/params.hpp"

namespace shardsec {

// A non-negative rational expectation that is infinite when the underlying
// failure probability is zero.
class ExpectedDuration {
 public:
  static ExpectedDuration infinite() { return ExpectedDuration(); }
  static ExpectedDuration of(Rational value) { return ExpectedDuration(std::move(value)); }

  bool is_infinite() const { return infinite_; }
  const Rational& value() const {
    if (infinite_) throw std::logic_error("infinite duration has no finite value");
    return value_;
  }
  double to_double() const;
  // Fixed-point decimal, "inf" when infinite.
  std::string to_decimal(int places) const;

 private:
  ExpectedDuration() : infinite_(true) {}
  explicit ExpectedDuration(Rational value) : value_(std::move(value)) {}

  Rational value_ = 0;
  bool infinite_ = false;
};

// E_s = 1 / p_fail; infinite when p_fail = 0.
ExpectedDuration expected_rounds(const ExactProb& p_fail);

// A = 1 / (p_fail * rounds_per_year); infinite when p_fail = 0.
ExpectedDuration years_to_fail(const ExactProb& p_fail, std::int64_t rounds_per_year);

// P'' = P(pool draws >= threshold) * P'(some committee over capacity), with
// P' from the generating-function route.
ExactProb successful_attack_prob(const NetworkParams& params, std::int64_t threshold);

// p_e = P * P' with P' from the joint-distribution enumeration; propagates
// BudgetExceeded for instances past the enumeration budget.
ExactProb epoch_failure_jhda(const NetworkParams& params, std::int64_t threshold,
                             std::uint64_t budget = kDefaultEnumerationBudget);

// Committee count times the first committee's failure probability —
// deliberately not clamped, so it can exceed 1. Reproduces the estimator this
// library exists to correct.
Rational bcp_comparator(const NetworkParams& params);

enum class Method { pgfa, jhda_exact, jhda_trials, bcp };
std::string method_label(Method method);  // "PGFA", "JHDA-exact", "JHDA-trials", "BCP"
Method parse_method(const std::string& text);  // throws ValidationError

struct SecurityReport {
  NetworkParams params;
  std::int64_t threshold = 0;  // pool-breach count actually used
  ThresholdMode threshold_mode = ThresholdMode::strict;
  Method method = Method::pgfa;
  ExactProb pool_breach{};        // P
  ExactProb takeover{};           // P'
  ExactProb attack{};             // P''
  ExactProb epoch_failure{};      // p_e = P * P'
  ExpectedDuration rounds = ExpectedDuration::infinite();  // E_s
  ExpectedDuration years = ExpectedDuration::infinite();   // A
};

struct AttackSummary {
  SecurityReport report;
  bool secure = false;
  Rational secure_threshold_years = 1;
};

struct AnalysisOptions {
  Method method = Method::pgfa;
  ThresholdMode threshold_mode = ThresholdMode::strict;
  Rational secure_years = 1;
  std::uint64_t budget = kDefaultEnumerationBudget;
  TrialConfig trials{1'000'000, 1};  // used by the trial-estimate method
};

AttackSummary analyze(const NetworkParams& params, const AnalysisOptions& options = {});

}  // namespace shardsec
