#pragma once

// Exact numeric substrate: arbitrary-precision integers, rationals in [0,1],
// and memoized binomial coefficients. Floating point appears only at the
// presentation boundary (to_scientific / to_decimal).

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace shardsec {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// C(n, k), exact. Returns 0 when k < 0 or k > n. Results are memoized per
// (n, k); lookups may run concurrently, inserts are serialized.
BigInt binomial(std::int64_t n, std::int64_t k);

// An exact probability: a rational in [0, 1], always in lowest terms.
class ExactProb {
 public:
  ExactProb() : num_(0), den_(1) {}

  // Throws std::domain_error unless 0 <= num <= den and den > 0. A violation
  // signals a formula bug, not bad user input: every probability here is a
  // ratio of counts where the numerator counts a subset.
  static ExactProb from_ratio(BigInt num, BigInt den);

  static ExactProb zero() { return ExactProb(); }
  static ExactProb one();

  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }
  Rational value() const { return Rational(num_, den_); }
  double to_double() const;
  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == den_; }

  ExactProb complement() const;  // 1 - p

  friend ExactProb operator*(const ExactProb& a, const ExactProb& b);
  friend bool operator==(const ExactProb& a, const ExactProb& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const ExactProb& a, const ExactProb& b) { return !(a == b); }
  friend bool operator<(const ExactProb& a, const ExactProb& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator<=(const ExactProb& a, const ExactProb& b) { return !(b < a); }
  friend bool operator>(const ExactProb& a, const ExactProb& b) { return b < a; }
  friend bool operator>=(const ExactProb& a, const ExactProb& b) { return !(a < b); }

 private:
  ExactProb(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {}
  BigInt num_;  // >= 0
  BigInt den_;  // > 0, gcd(num_, den_) == 1
};

// Spec'd free-function spelling of ExactProb::from_ratio.
ExactProb prob_from_ratio(const BigInt& num, const BigInt& den);

// Round-half-even scientific notation with `sig_digits` significant digits,
// e.g. "2.04e-06". Zero renders as "0". Requires a non-negative value.
std::string to_scientific(const ExactProb& p, int sig_digits);
std::string to_scientific(const Rational& x, int sig_digits);

// Round-half-even fixed-point rendering, e.g. "8623.62" for places = 2.
// Requires a non-negative value.
std::string to_decimal(const Rational& x, int places);

}  // namespace shardsec
