#include "shardsec/genpoly.hpp"

#include <doctest.h>

#include <random>

#include "oracles.hpp"

using namespace shardsec;

namespace {

BigPoly random_poly(std::mt19937_64& rng, int max_degree, std::int64_t max_coeff) {
  const int degree = static_cast<int>(rng() % static_cast<std::uint64_t>(max_degree + 1));
  std::vector<BigInt> coeffs;
  for (int i = 0; i <= degree; ++i) coeffs.emplace_back(rng() % static_cast<std::uint64_t>(max_coeff + 1));
  return BigPoly(std::move(coeffs));
}

NetworkParams reference_params() {
  RawParams raw;
  raw.total_nodes = 1000;
  raw.selection_pool = 800;
  raw.sybil_ids = 200;
  raw.sybil_selected = 200;
  raw.committee_size = 100;
  raw.committee_resiliency = Rational(333, 1000);
  raw.selection_resiliency = Rational(1, 5);
  raw.rounds_per_year = 365;
  return NetworkParams::validate(raw);
}

}  // namespace

TEST_CASE("BigPoly canonical form") {
  const BigPoly p({BigInt(1), BigInt(2), BigInt(0), BigInt(0)});
  CHECK(p.degree() == 1);
  CHECK(p.coefficient(0) == 1);
  CHECK(p.coefficient(5) == 0);
  CHECK(BigPoly{}.is_zero());
  CHECK(BigPoly({BigInt(0)}).is_zero());
  CHECK_THROWS_AS(BigPoly({BigInt(-1)}), std::domain_error);
  const BigPoly capped({BigInt(1), BigInt(2), BigInt(3)}, 1);
  CHECK(capped.degree() == 1);
  CHECK(*capped.degree_cap() == 1);
}

TEST_CASE("committee_poly") {
  CHECK(committee_poly(4, 2) == BigPoly({BigInt(1), BigInt(4), BigInt(6)}));
  CHECK(committee_poly(3, 0) == BigPoly({BigInt(1)}));
  const BigPoly big = committee_poly(100, 33);
  CHECK(big.degree() == 33);
  CHECK(big.coefficient(33) == binomial(100, 33));
  CHECK_THROWS_AS(committee_poly(4, 5), std::domain_error);
  CHECK_THROWS_AS(committee_poly(4, -1), std::domain_error);
}

TEST_CASE("poly_mul basics and truncation") {
  const BigPoly one_plus_x({BigInt(1), BigInt(1)});
  CHECK(poly_mul(one_plus_x, one_plus_x) == BigPoly({BigInt(1), BigInt(2), BigInt(1)}));
  CHECK(poly_mul(one_plus_x, one_plus_x, 1) == BigPoly({BigInt(1), BigInt(2)}));
  // [x^2] of committee_poly(4,2)^2: 6 + 16 + 6 = 28
  const BigPoly sq = poly_mul(committee_poly(4, 2), committee_poly(4, 2));
  CHECK(sq.coefficient(2) == 28);
  CHECK(poly_mul(BigPoly{}, one_plus_x).is_zero());
}

TEST_CASE("poly_mul inherits operand caps") {
  const BigPoly a({BigInt(1), BigInt(1), BigInt(1)}, 2);
  const BigPoly b({BigInt(1), BigInt(1)});
  const BigPoly product = poly_mul(a, b);
  CHECK(product.degree_cap().has_value());
  CHECK(*product.degree_cap() == 2);
  CHECK(product.degree() <= 2);
}

TEST_CASE("poly_mul matches schoolbook on random inputs") {
  std::mt19937_64 rng(404);
  for (int i = 0; i < 100; ++i) {
    const BigPoly a = random_poly(rng, 12, 50);
    const BigPoly b = random_poly(rng, 12, 50);
    const auto expected = test::schoolbook_mul(a.coefficients(), b.coefficients());
    CHECK(poly_mul(a, b) == BigPoly(expected));
  }
}

TEST_CASE("poly_pow basics") {
  const BigPoly one_plus_x({BigInt(1), BigInt(1)});
  CHECK(poly_pow(one_plus_x, 3, 3) ==
        BigPoly({BigInt(1), BigInt(3), BigInt(3), BigInt(1)}));
  const BigPoly p({BigInt(2), BigInt(5), BigInt(1)});
  CHECK(poly_pow(p, 1, 10) == p);
  CHECK(poly_pow(p, 1, 1) == BigPoly({BigInt(2), BigInt(5)}));
  CHECK(poly_pow(BigPoly({BigInt(1), BigInt(2)}), 2, 5).coefficient(2) == 4);
  CHECK_THROWS_AS(poly_pow(p, 0, 5), std::domain_error);
  CHECK_THROWS_AS(poly_pow(p, 2, -1), std::domain_error);
}

TEST_CASE("poly_pow equals repeated multiplication") {
  std::mt19937_64 rng(808);
  for (int i = 0; i < 20; ++i) {
    const BigPoly p = random_poly(rng, 10, 30);
    const auto exponent = static_cast<std::int64_t>(rng() % 16) + 1;
    const std::int64_t cap = static_cast<std::int64_t>(rng() % 40);
    BigPoly naive = BigPoly({BigInt(1)}, cap);
    for (std::int64_t e = 0; e < exponent; ++e) naive = poly_mul(naive, p, cap);
    CHECK(poly_pow(p, exponent, cap) == naive);
  }
  // one larger case
  const BigPoly wide = random_poly(rng, 50, 1000);
  BigPoly naive = BigPoly({BigInt(1)}, 50);
  for (int e = 0; e < 16; ++e) naive = poly_mul(naive, wide, 50);
  CHECK(poly_pow(wide, 16, 50) == naive);
}

TEST_CASE("coefficient lookups") {
  const BigPoly p({BigInt(1), BigInt(4), BigInt(6)});
  CHECK(coefficient(p, 1) == 4);
  CHECK(coefficient(p, 5) == 0);
  CHECK_THROWS_AS(coefficient(p, -1), std::domain_error);
}

TEST_CASE("takeover probability from counts: edges") {
  CHECK(pgfa_failure_from_counts(8, 100, 33, 0).is_zero());
  // more Sybils than any committee tolerates in total
  CHECK(pgfa_failure_from_counts(2, 4, 1, 3).is_one());
  // more Sybils than slots
  CHECK(pgfa_failure_from_counts(2, 3, 3, 7).is_one());
  CHECK_THROWS_AS(pgfa_failure_from_counts(0, 4, 1, 1), std::domain_error);
}

TEST_CASE("takeover probability matches placement enumeration") {
  for (int committees = 1; committees <= 3; ++committees) {
    for (int size = 1; size <= 4; ++size) {
      for (int cap = 0; cap <= size; ++cap) {
        for (int sybils = 0; sybils <= committees * size; ++sybils) {
          const auto [safe, total] =
              test::enumerated_placements(committees, size, cap, sybils);
          const ExactProb expected = prob_from_ratio(safe, total).complement();
          CAPTURE(committees);
          CAPTURE(size);
          CAPTURE(cap);
          CAPTURE(sybils);
          CHECK(pgfa_failure_from_counts(committees, size, cap, sybils) == expected);
        }
      }
    }
  }
}

TEST_CASE("full-capacity committees never fail (exhaustivity)") {
  for (int committees = 1; committees <= 3; ++committees) {
    for (int size = 1; size <= 6; ++size) {
      for (int sybils = 0; sybils <= committees * size; ++sybils) {
        CHECK(pgfa_failure_from_counts(committees, size, size, sybils).is_zero());
      }
    }
  }
}

TEST_CASE("coefficients of the full row recover plain binomials") {
  for (std::int64_t committees = 1; committees <= 4; ++committees) {
    for (std::int64_t size = 2; size <= 6; ++size) {
      const std::int64_t slots = committees * size;
      const BigPoly full = poly_pow(committee_poly(size, size), committees, slots);
      BigInt sum = 0;
      for (std::int64_t m = 0; m <= slots; ++m) {
        CHECK(full.coefficient(m) == binomial(slots, m));
        sum += full.coefficient(m);
      }
      CHECK(sum == BigInt(1) << slots);
    }
  }
}

TEST_CASE("safe count never exceeds the unconstrained count") {
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 50; ++i) {
    const auto committees = static_cast<std::int64_t>(rng() % 4) + 1;
    const auto size = static_cast<std::int64_t>(rng() % 7) + 1;
    const auto cap = static_cast<std::int64_t>(rng() % (size + 1));
    const auto sybils = static_cast<std::int64_t>(rng() % (committees * size + 1));
    const BigInt safe =
        poly_pow(committee_poly(size, cap), committees, sybils).coefficient(sybils);
    CHECK(safe <= binomial(committees * size, sybils));
  }
}

TEST_CASE("takeover probability is monotone in sybils and anti-monotone in capacity") {
  for (std::int64_t sybils = 0; sybils < 12; ++sybils) {
    CHECK(pgfa_failure_from_counts(3, 4, 2, sybils) <=
          pgfa_failure_from_counts(3, 4, 2, sybils + 1));
  }
  for (std::int64_t cap = 0; cap < 4; ++cap) {
    CHECK(pgfa_failure_from_counts(3, 4, cap, 5) >=
          pgfa_failure_from_counts(3, 4, cap + 1, 5));
  }
}

TEST_CASE("reference-scale takeover probability") {
  CHECK(to_scientific(pgfa_failure_from_counts(8, 100, 33, 200), 3) == "1.56e-01");
  CHECK(to_scientific(pgfa_failure_prob(reference_params()), 3) == "1.56e-01");
}

TEST_CASE("remainder slots: excluded by default, modelled when asked") {
  RawParams raw;
  raw.total_nodes = 40;
  raw.selection_pool = 10;  // 2 committees of 4, 2 leftover slots
  raw.sybil_ids = 6;
  raw.sybil_selected = 5;
  raw.committee_size = 4;
  raw.committee_resiliency = Rational(1, 2);  // capacity 2
  raw.selection_resiliency = Rational(1, 5);
  raw.rounds_per_year = 365;
  const NetworkParams params = NetworkParams::validate(raw);
  CHECK(params.leftover_ids() == 2);

  const ExactProb excluded = pgfa_failure_prob(params);
  CHECK(excluded == pgfa_failure_from_counts(2, 4, 2, 5));

  const ExactProb spread = pgfa_failure_prob(params, RemainderModel::spread_across_pool);
  const auto [safe, total] = test::enumerated_placements(2, 4, 2, 5, 2);
  CHECK(spread == prob_from_ratio(safe, total).complement());
  CHECK(spread != excluded);

  // they coincide when K is an exact multiple of n
  RawParams exact_fit = raw;
  exact_fit.selection_pool = 8;
  const NetworkParams snug = NetworkParams::validate(exact_fit);
  CHECK(pgfa_failure_prob(snug) ==
        pgfa_failure_prob(snug, RemainderModel::spread_across_pool));
}
