#include <doctest.h>

#include <koopdh/koopman_lift.hpp>
#include <koopdh/linear_complexity.hpp>

#include "../oracles.hpp"

#include <stdexcept>

using namespace koopdh;

namespace {

std::vector<Rational> rats(std::initializer_list<long> v) {
  std::vector<Rational> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

const std::vector<Int> kExample1{0, 1, 2, 0, 1, 2, 0, 1, 2};

}  // namespace

TEST_CASE("berlekamp_massey examples") {
  const auto ex1 = berlekamp_massey(SequenceSample::rational(kExample1));
  CHECK(ex1.length == 3);
  CHECK(ex1.connection == rats({0, 0, 1}));

  const auto dh = berlekamp_massey(SequenceSample::rational(oracle::dh_sequence(5, 2, 8)));
  CHECK(dh.length == 3);
  CHECK(dh.connection == rats({1, -1, 1}));

  const auto zero = berlekamp_massey(SequenceSample::rational(std::vector<Int>(6, 0)));
  CHECK(zero.length == 0);
  CHECK(zero.connection.empty());

  const auto ex2 = berlekamp_massey(SequenceSample::rational(std::vector<Int>{1, 4, 10, 22, 46}));
  CHECK(ex2.length == 2);
  CHECK(ex2.connection == rats({3, -2}));
}

TEST_CASE("field sensitivity of the mod-3 counter") {
  CHECK(berlekamp_massey(SequenceSample::rational(kExample1)).length == 3);
  const auto gf3 = berlekamp_massey(SequenceSample::prime_field(kExample1, 3));
  CHECK(gf3.length == 2);
  CHECK(gf3.field == FieldTag::prime(3));
  CHECK(lfsr_generate(gf3.connection, rats({0, 1}), 9, gf3.field) ==
        to_rationals(kExample1));
  CHECK(FieldTag::rational().describe() == "rational");
  CHECK(FieldTag::prime(3).describe() == "prime-field(3)");
}

TEST_CASE("lfsr_generate") {
  CHECK(lfsr_generate(rats({3, -2}), rats({1, 4}), 5) == rats({1, 4, 10, 22, 46}));
  CHECK(lfsr_generate(rats({0, 0, 1}), rats({0, 1, 2}), 6) == rats({0, 1, 2, 0, 1, 2}));
  CHECK(lfsr_generate(rats({5, 7}), rats({2, 9}), 2) == rats({2, 9}));
  CHECK_THROWS_AS(lfsr_generate(rats({1, 1}), rats({1}), 5), std::invalid_argument);
}

TEST_CASE("bruteforce_min_lfsr") {
  const auto ex1 = bruteforce_min_lfsr(SequenceSample::rational(kExample1), 5);
  REQUIRE(ex1);
  CHECK(ex1->length == 3);
  const auto dh = bruteforce_min_lfsr(SequenceSample::rational(oracle::dh_sequence(7, 3, 12)), 6);
  REQUIRE(dh);
  CHECK(dh->length == 4);
  const auto constant = bruteforce_min_lfsr(SequenceSample::rational(std::vector<Int>(7, 5)), 3);
  REQUIRE(constant);
  CHECK(constant->length == 1);
  CHECK_FALSE(bruteforce_min_lfsr(SequenceSample::rational(oracle::dh_sequence(23, 5, 44)), 5));
}

TEST_CASE("compare_koopman_vs_lfsr") {
  for (auto [p, m, expected] : {std::tuple{5L, 2L, 3UL}, {7L, 3L, 4UL}, {23L, 5L, 12UL}}) {
    const auto cmp = compare_koopman_vs_lfsr(DhParams(p, m));
    CHECK(cmp.lfsr_length == expected);
    CHECK(cmp.koopman_dimension == expected);
    CHECK(cmp.equal);
    CHECK(cmp.connection_as_alpha == canonical_alpha(p, expected - 1));
  }
}

TEST_CASE("attainment: complexity equals q~+1 for every primitive root, p <= 61") {
  for (long p : oracle::primes_between(5, 61)) {
    for (long m : oracle::primitive_roots(p)) {
      const auto seq = oracle::dh_sequence(p, m, 2 * static_cast<std::size_t>(p - 1));
      const auto bm = berlekamp_massey(SequenceSample::rational(seq));
      CHECK(bm.length == static_cast<std::size_t>(p - 1) / 2 + 1);
      CHECK(connection_to_alpha(bm.connection) == canonical_alpha(p, bm.length - 1));
    }
    const auto seq = oracle::dh_sequence(p, oracle::primitive_roots(p).front(), 2 * static_cast<std::size_t>(p - 1));
    CHECK(oracle::linear_complexity(seq) == static_cast<std::size_t>(p - 1) / 2 + 1);
  }
}

TEST_CASE("Berlekamp-Massey agrees with the brute-force oracles on random sequences") {
  for (int trial = 0; trial < 300; ++trial) {
    // Random recurrence of order L seeded randomly, or plain noise.
    const std::size_t len = static_cast<std::size_t>(oracle::uniform(1, 24));
    std::vector<Int> s;
    if (trial % 3 == 0) {
      for (std::size_t i = 0; i < len; ++i) s.emplace_back(oracle::uniform(-5, 5));
    } else {
      const std::size_t order = static_cast<std::size_t>(oracle::uniform(1, 6));
      std::vector<long> c(order);
      for (auto& v : c) v = oracle::uniform(-3, 3);
      for (std::size_t i = 0; i < len; ++i) {
        if (i < order) {
          s.emplace_back(oracle::uniform(-4, 4));
          continue;
        }
        Int next = 0;
        for (std::size_t j = 0; j < order; ++j) next += c[j] * s[i - 1 - j];
        s.push_back(next);
      }
    }
    const auto seq = SequenceSample::rational(s);
    const auto bm = berlekamp_massey(seq);
    CHECK(bm.length == oracle::linear_complexity(s));
    if (bm.length <= 12) {
      const auto bf = bruteforce_min_lfsr(seq, 12);
      REQUIRE(bf);
      CHECK(bf->length == bm.length);
    }
    const std::vector<Rational> seed(seq.terms.begin(), seq.terms.begin() + static_cast<std::ptrdiff_t>(bm.length));
    CHECK(lfsr_generate(bm.connection, seed, s.size()) == seq.terms);
  }
}

TEST_CASE("prime-field Berlekamp-Massey regenerates its input") {
  for (int trial = 0; trial < 200; ++trial) {
    const long p = std::vector<long>{2, 3, 5, 7, 11}[oracle::uniform(0, 4)];
    std::vector<Int> s;
    const std::size_t len = static_cast<std::size_t>(oracle::uniform(1, 20));
    for (std::size_t i = 0; i < len; ++i) s.emplace_back(oracle::uniform(0, p - 1));
    const auto seq = SequenceSample::prime_field(s, p);
    const auto bm = berlekamp_massey(seq);
    CHECK(bm.length <= len);
    const std::vector<Rational> seed(seq.terms.begin(), seq.terms.begin() + static_cast<std::ptrdiff_t>(bm.length));
    CHECK(lfsr_generate(bm.connection, seed, len, seq.field) == seq.terms);
    const auto bf = bruteforce_min_lfsr(seq, len);
    REQUIRE(bf);
    CHECK(bf->length == bm.length);
  }
}

TEST_CASE("non-integral input is rejected in prime fields") {
  CHECK_THROWS_AS(SequenceSample::prime_field({1, 2}, 4), std::invalid_argument);
}
