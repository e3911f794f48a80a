#include "shardsec/genpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace shardsec {

namespace {

const BigInt kZero = 0;

std::optional<std::int64_t> min_cap(std::optional<std::int64_t> a, std::optional<std::int64_t> b) {
  if (a && b) return std::min(*a, *b);
  return a ? a : b;
}

}  // namespace

BigPoly::BigPoly(std::vector<BigInt> coeffs, std::optional<std::int64_t> degree_cap)
    : coeffs_(std::move(coeffs)), cap_(degree_cap) {
  for (const BigInt& c : coeffs_) {
    if (c < 0) throw std::domain_error("polynomial coefficients must be non-negative");
  }
  if (cap_) {
    if (*cap_ < 0) throw std::domain_error("degree cap must be non-negative");
    if (static_cast<std::int64_t>(coeffs_.size()) > *cap_ + 1) coeffs_.resize(*cap_ + 1);
  }
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigPoly BigPoly::one() { return BigPoly({BigInt(1)}); }

const BigInt& BigPoly::coefficient(std::int64_t m) const {
  if (m < 0) throw std::domain_error("coefficient index must be non-negative");
  if (m >= static_cast<std::int64_t>(coeffs_.size())) return kZero;
  return coeffs_[static_cast<std::size_t>(m)];
}

BigPoly committee_poly(std::int64_t n, std::int64_t cap) {
  if (n < 0) throw std::domain_error("committee size must be non-negative");
  if (cap < 0 || cap > n) throw std::domain_error("capacity outside [0, committee size]");
  std::vector<BigInt> coeffs;
  coeffs.reserve(static_cast<std::size_t>(cap) + 1);
  for (std::int64_t i = 0; i <= cap; ++i) coeffs.push_back(binomial(n, i));
  return BigPoly(std::move(coeffs));
}

BigPoly poly_mul(const BigPoly& a, const BigPoly& b, std::optional<std::int64_t> cap) {
  const auto effective = min_cap(cap, min_cap(a.degree_cap(), b.degree_cap()));
  if (a.is_zero() || b.is_zero()) return BigPoly({}, effective);

  const auto& ca = a.coefficients();
  const auto& cb = b.coefficients();
  std::int64_t out_degree = a.degree() + b.degree();
  if (effective) out_degree = std::min(out_degree, *effective);
  std::vector<BigInt> out(static_cast<std::size_t>(out_degree) + 1, BigInt(0));
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (static_cast<std::int64_t>(i) > out_degree) break;
    if (ca[i] == 0) continue;
    const std::size_t j_max =
        std::min(cb.size() - 1, static_cast<std::size_t>(out_degree) - i);
    for (std::size_t j = 0; j <= j_max; ++j) {
      out[i + j] += ca[i] * cb[j];
    }
  }
  return BigPoly(std::move(out), effective);
}

BigPoly poly_pow(const BigPoly& p, std::int64_t exponent, std::int64_t cap) {
  if (exponent < 1) throw std::domain_error("polynomial exponent must be >= 1");
  if (cap < 0) throw std::domain_error("degree cap must be non-negative");
  BigPoly base(p.coefficients(), cap);
  BigPoly result = BigPoly({BigInt(1)}, cap);
  std::int64_t e = exponent;
  while (e > 0) {
    if (e & 1) result = poly_mul(result, base, cap);
    e >>= 1;
    if (e > 0) base = poly_mul(base, base, cap);
  }
  return result;
}

BigInt coefficient(const BigPoly& p, std::int64_t m) { return p.coefficient(m); }

ExactProb pgfa_failure_from_counts(std::int64_t committees, std::int64_t committee_size,
                                   std::int64_t capacity, std::int64_t sybils) {
  if (committees < 1) throw std::domain_error("committee count must be >= 1");
  if (sybils < 0) throw std::domain_error("sybil count must be non-negative");
  const std::int64_t slots = committees * committee_size;
  if (sybils == 0) return ExactProb::zero();
  if (sybils > slots) return ExactProb::one();  // pigeonhole, no valid assignment at all
  const BigPoly single = committee_poly(committee_size, capacity);
  const BigPoly all = poly_pow(single, committees, sybils);
  // safe count <= C(slots, sybils) structurally, so this is a probability
  return prob_from_ratio(all.coefficient(sybils), binomial(slots, sybils)).complement();
}

ExactProb pgfa_failure_prob(const NetworkParams& params, RemainderModel model) {
  const std::int64_t committees = params.committee_count();
  const std::int64_t size = params.committee_size();
  const std::int64_t capacity = params.committee_capacity();
  const std::int64_t sybils = params.sybil_selected();
  if (model == RemainderModel::committee_slots_only || params.leftover_ids() == 0) {
    return pgfa_failure_from_counts(committees, size, capacity, sybils);
  }
  // Leftover slots admit any Sybil count: their generating polynomial is the
  // full row (1 + x)^leftover.
  if (sybils == 0) return ExactProb::zero();
  const std::int64_t slots = params.selection_pool();
  const BigPoly committees_part = poly_pow(committee_poly(size, capacity), committees, sybils);
  const BigPoly leftover_part = committee_poly(params.leftover_ids(), params.leftover_ids());
  const BigPoly all = poly_mul(committees_part, leftover_part, sybils);
  return prob_from_ratio(all.coefficient(sybils), binomial(slots, sybils)).complement();
}

}  // namespace shardsec
