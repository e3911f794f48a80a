#include "shardsec/attack.hpp"

#include <limits>

#include "shardsec/hypergeom.hpp"

namespace shardsec {

double ExpectedDuration::to_double() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_.convert_to<double>();
}

std::string ExpectedDuration::to_decimal(int places) const {
  return infinite_ ? "inf" : shardsec::to_decimal(value_, places);
}

ExpectedDuration expected_rounds(const ExactProb& p_fail) {
  if (p_fail.is_zero()) return ExpectedDuration::infinite();
  return ExpectedDuration::of(Rational(p_fail.denominator(), p_fail.numerator()));
}

ExpectedDuration years_to_fail(const ExactProb& p_fail, std::int64_t rounds_per_year) {
  if (rounds_per_year < 1) throw std::domain_error("rounds per year must be >= 1");
  if (p_fail.is_zero()) return ExpectedDuration::infinite();
  return ExpectedDuration::of(
      Rational(p_fail.denominator(), p_fail.numerator() * rounds_per_year));
}

ExactProb successful_attack_prob(const NetworkParams& params, std::int64_t threshold) {
  return tail_at_least(pool_spec(params), threshold) * pgfa_failure_prob(params);
}

ExactProb epoch_failure_jhda(const NetworkParams& params, std::int64_t threshold,
                             std::uint64_t budget) {
  return tail_at_least(pool_spec(params), threshold) * jhda_exact(params, budget);
}

Rational bcp_comparator(const NetworkParams& params) {
  // First committee viewed in isolation: n draws from the K-sized selection
  // pool with M_sel marked, failing above capacity. Scaling by the committee
  // count over-counts overlapping failures.
  const HypergeomSpec first_committee(params.selection_pool(), params.sybil_selected(),
                                      params.committee_size());
  const ExactProb one_shard = tail_at_least(first_committee, params.committee_capacity() + 1);
  return Rational(params.committee_count()) * one_shard.value();
}

std::string method_label(Method method) {
  switch (method) {
    case Method::pgfa: return "PGFA";
    case Method::jhda_exact: return "JHDA-exact";
    case Method::jhda_trials: return "JHDA-trials";
    case Method::bcp: return "BCP";
  }
  throw std::logic_error("unreachable method");
}

Method parse_method(const std::string& text) {
  if (text == "pgfa" || text == "PGFA") return Method::pgfa;
  if (text == "jhda-exact" || text == "JHDA-exact") return Method::jhda_exact;
  if (text == "jhda-trials" || text == "JHDA-trials") return Method::jhda_trials;
  if (text == "bcp" || text == "BCP") return Method::bcp;
  throw ValidationError("unknown method", text);
}

AttackSummary analyze(const NetworkParams& params, const AnalysisOptions& options) {
  SecurityReport report{.params = params};
  report.threshold_mode = options.threshold_mode;
  report.threshold = pool_breach_threshold(params, options.threshold_mode);
  report.method = options.method;
  report.pool_breach = tail_at_least(pool_spec(params), report.threshold);
  switch (options.method) {
    case Method::pgfa:
      report.takeover = pgfa_failure_prob(params);
      break;
    case Method::jhda_exact:
      report.takeover = jhda_exact(params, options.budget);
      break;
    case Method::jhda_trials: {
      const TrialEstimate est = jhda_trials(params, options.trials);
      report.takeover = prob_from_ratio(est.failures, est.trials);
      break;
    }
    case Method::bcp:
      throw ValidationError("method not usable for reports",
                            "the BCP comparator is not a probability; see the sweep output");
  }
  report.attack = report.pool_breach * report.takeover;
  report.epoch_failure = report.attack;
  report.rounds = expected_rounds(report.attack);
  report.years = years_to_fail(report.attack, params.rounds_per_year());

  AttackSummary summary{.report = std::move(report)};
  summary.secure_threshold_years = options.secure_years;
  summary.secure = summary.report.years.is_infinite() ||
                   summary.report.years.value() >= summary.secure_threshold_years;
  return summary;
}

}  // namespace shardsec
