#include "shardsec/exactmath.hpp"

#include <algorithm>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace shardsec {

namespace {

struct PairKeyHash {
  std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& p) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(p.first) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(p.second) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

std::shared_mutex g_binomial_mutex;
std::unordered_map<std::pair<std::int64_t, std::int64_t>, BigInt, PairKeyHash> g_binomial_cache;

BigInt pow10_big(std::int64_t e) {
  return boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(e));
}

// mantissa/exponent of x = num/den (> 0) rounded half-even to `sig` digits.
std::pair<BigInt, std::int64_t> sci_parts(const BigInt& num, const BigInt& den, int sig) {
  // exponent e with 10^e <= num/den < 10^(e+1); digit-count guess, then adjust
  std::int64_t e = static_cast<std::int64_t>(num.str().size()) -
                   static_cast<std::int64_t>(den.str().size());
  auto less_than_pow = [&](std::int64_t p) {
    return p >= 0 ? num < den * pow10_big(p) : num * pow10_big(-p) < den;
  };
  while (less_than_pow(e)) --e;
  while (!less_than_pow(e + 1)) ++e;

  const std::int64_t shift = sig - 1 - e;
  BigInt a = num, b = den;
  if (shift >= 0) {
    a *= pow10_big(shift);
  } else {
    b *= pow10_big(-shift);
  }
  BigInt q = a / b;
  const BigInt twice_rem = 2 * (a - q * b);
  if (twice_rem > b || (twice_rem == b && (q & 1) == 1)) ++q;
  if (q == pow10_big(sig)) {
    q = pow10_big(sig - 1);
    ++e;
  }
  return {q, e};
}

std::string format_sci(const BigInt& num, const BigInt& den, int sig) {
  if (sig < 1) throw std::domain_error("to_scientific: sig_digits must be >= 1");
  if (num == 0) return "0";
  if (num < 0 || den <= 0) throw std::domain_error("to_scientific: value must be non-negative");
  auto [mantissa, e] = sci_parts(num, den, sig);
  const std::string digits = mantissa.str();
  std::ostringstream out;
  out << digits[0];
  if (sig > 1) out << '.' << digits.substr(1);
  out << 'e' << (e < 0 ? '-' : '+');
  const std::int64_t mag = e < 0 ? -e : e;
  if (mag < 10) out << '0';
  out << mag;
  return out.str();
}

}  // namespace

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (n < 0) throw std::domain_error("binomial: n must be non-negative");
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  if (k == 0) return 1;

  const auto key = std::make_pair(n, k);
  {
    std::shared_lock lock(g_binomial_mutex);
    auto it = g_binomial_cache.find(key);
    if (it != g_binomial_cache.end()) return it->second;
  }

  // Multiplicative form: each step multiplies by (n-k+i) and divides by i,
  // which is exact (the intermediate is C(n-k+i, i)).
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= (n - k + i);
    result /= i;
  }

  std::unique_lock lock(g_binomial_mutex);
  return g_binomial_cache.emplace(key, std::move(result)).first->second;
}

ExactProb ExactProb::from_ratio(BigInt num, BigInt den) {
  if (den == 0) throw std::domain_error("probability denominator is zero");
  if (den < 0) throw std::domain_error("probability denominator is negative");
  if (num < 0) throw std::domain_error("probability numerator is negative");
  if (num > den) {
    throw std::domain_error("probability numerator exceeds denominator (" + num.str() + "/" +
                            den.str() + ")");
  }
  BigInt g = boost::multiprecision::gcd(num, den);
  return ExactProb(num / g, den / g);
}

ExactProb ExactProb::one() { return ExactProb(1, 1); }

double ExactProb::to_double() const { return value().convert_to<double>(); }

ExactProb ExactProb::complement() const {
  // den - num and den share no factor (gcd(num, den) == 1)
  return ExactProb(den_ - num_, den_);
}

ExactProb operator*(const ExactProb& a, const ExactProb& b) {
  return ExactProb::from_ratio(a.num_ * b.num_, a.den_ * b.den_);
}

ExactProb prob_from_ratio(const BigInt& num, const BigInt& den) {
  return ExactProb::from_ratio(num, den);
}

std::string to_scientific(const ExactProb& p, int sig_digits) {
  return format_sci(p.numerator(), p.denominator(), sig_digits);
}

std::string to_scientific(const Rational& x, int sig_digits) {
  return format_sci(boost::multiprecision::numerator(x), boost::multiprecision::denominator(x),
                    sig_digits);
}

std::string to_decimal(const Rational& x, int places) {
  if (places < 0) throw std::domain_error("to_decimal: places must be >= 0");
  if (x < 0) throw std::domain_error("to_decimal: value must be non-negative");
  const BigInt scale = pow10_big(places);
  const BigInt a = boost::multiprecision::numerator(x) * scale;
  const BigInt& b = boost::multiprecision::denominator(x);
  BigInt q = a / b;
  const BigInt twice_rem = 2 * (a - q * b);
  if (twice_rem > b || (twice_rem == b && (q & 1) == 1)) ++q;
  if (places == 0) return q.str();
  const BigInt whole = q / scale;
  std::string frac = BigInt(q % scale).str();
  if (static_cast<int>(frac.size()) < places) {
    frac.insert(0, static_cast<std::size_t>(places) - frac.size(), '0');
  }
  return whole.str() + "." + frac;
}

}  // namespace shardsec
