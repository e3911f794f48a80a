#include "shardsec/params.hpp"

#include <cctype>

namespace shardsec {

namespace {

std::string num(std::int64_t v) { return std::to_string(v); }

}  // namespace

NetworkParams::NetworkParams(RawParams raw) : raw_(std::move(raw)) {
  id_pool_ = raw_.total_nodes - 1 + raw_.sybil_ids;
  committee_count_ = raw_.selection_pool / raw_.committee_size;
  leftover_ids_ = raw_.selection_pool - committee_count_ * raw_.committee_size;
  committee_capacity_ = floor_scaled(raw_.committee_resiliency, raw_.committee_size);
}

NetworkParams NetworkParams::validate(const RawParams& raw) {
  if (raw.total_nodes < 1)
    throw ValidationError("N must be positive", "N=" + num(raw.total_nodes));
  if (raw.committee_size < 1)
    throw ValidationError("n must be positive", "n=" + num(raw.committee_size));
  if (raw.selection_pool < 1)
    throw ValidationError("K must be positive", "K=" + num(raw.selection_pool));
  if (raw.sybil_ids < 0)
    throw ValidationError("M must be non-negative", "M=" + num(raw.sybil_ids));
  if (raw.sybil_selected < 0)
    throw ValidationError("M_sel must be non-negative", "M_sel=" + num(raw.sybil_selected));
  if (raw.rounds_per_year < 1)
    throw ValidationError("N_s must be positive", "N_s=" + num(raw.rounds_per_year));
  if (raw.committee_resiliency <= 0 || raw.committee_resiliency >= 1)
    throw ValidationError("r out of range (0,1)");
  if (raw.selection_resiliency <= 0 || raw.selection_resiliency >= 1)
    throw ValidationError("R out of range (0,1)");
  if (raw.sybil_selected > raw.sybil_ids) {
    throw ValidationError("M_sel exceeds M",
                          "M_sel=" + num(raw.sybil_selected) + ", M=" + num(raw.sybil_ids));
  }
  if (raw.sybil_selected > raw.selection_pool) {
    throw ValidationError("M_sel exceeds K",
                          "M_sel=" + num(raw.sybil_selected) + ", K=" + num(raw.selection_pool));
  }
  const std::int64_t pool = raw.total_nodes - 1 + raw.sybil_ids;
  if (raw.selection_pool > pool) {
    throw ValidationError("K exceeds ID pool",
                          "K=" + num(raw.selection_pool) + ", Lambda=" + num(pool));
  }
  if (raw.selection_pool < raw.committee_size) {
    throw ValidationError("K smaller than committee size",
                          "K=" + num(raw.selection_pool) + ", n=" + num(raw.committee_size) +
                              " yields zero committees");
  }
  return NetworkParams(raw);
}

std::int64_t pool_breach_threshold(const NetworkParams& params, ThresholdMode mode) {
  const Rational& resiliency = params.selection_resiliency();
  const std::int64_t pool = params.selection_pool();
  const std::int64_t floored = floor_scaled(resiliency, pool);
  switch (mode) {
    case ThresholdMode::floor_rk:
      return floored;
    case ThresholdMode::strict:
      return floored + 1;
    case ThresholdMode::ceil: {
      const bool exact = (resiliency * pool) == Rational(floored);
      return exact ? floored : floored + 1;
    }
  }
  throw std::logic_error("unreachable threshold mode");
}

std::string threshold_mode_label(ThresholdMode mode) {
  switch (mode) {
    case ThresholdMode::floor_rk: return "floor_RK";
    case ThresholdMode::strict: return "strict";
    case ThresholdMode::ceil: return "ceil";
  }
  throw std::logic_error("unreachable threshold mode");
}

ThresholdMode parse_threshold_mode(const std::string& text) {
  if (text == "floor_RK") return ThresholdMode::floor_rk;
  if (text == "strict") return ThresholdMode::strict;
  if (text == "ceil") return ThresholdMode::ceil;
  throw ValidationError("unknown threshold mode", text);
}

Rational parse_rational_text(const std::string& text) {
  const auto bad = [&] { return std::invalid_argument("not a rational literal: '" + text + "'"); };
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw bad();
  const auto all_digits = [](const std::string& t) {
    if (t.empty()) return false;
    for (char c : t) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  };
  if (auto slash = s.find('/'); slash != std::string::npos) {
    const std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    if (!all_digits(a) || !all_digits(b)) throw bad();
    BigInt den(b);
    if (den == 0) throw bad();
    return Rational(BigInt(a), den);
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    const std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac)) throw bad();
    const BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    const BigInt n = (whole.empty() ? BigInt(0) : BigInt(whole)) * scale + BigInt(frac);
    return Rational(n, scale);
  }
  if (!all_digits(s)) throw bad();
  return Rational(BigInt(s));
}

std::int64_t floor_scaled(const Rational& x, std::int64_t count) {
  const BigInt scaled =
      boost::multiprecision::numerator(x) * count / boost::multiprecision::denominator(x);
  return scaled.convert_to<std::int64_t>();
}

}  // namespace shardsec
