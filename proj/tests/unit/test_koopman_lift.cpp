#include <doctest.h>

#include <koopdh/exact_linalg.hpp>
#include <koopdh/koopman_lift.hpp>

#include "../oracles.hpp"

#include <stdexcept>

using namespace koopdh;

namespace {

std::vector<Rational> rats(std::initializer_list<long> v) {
  std::vector<Rational> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

ModTrajectory base(long p, long m, std::size_t steps) { return simulate(m, DhParams(p, m), 1, steps); }

}  // namespace

TEST_CASE("dictionary dimensions") {
  CHECK(ObservableDictionary{DictionaryKind::Shift, 3}.dimension() == 4);
  CHECK(ObservableDictionary{DictionaryKind::ComplexExp, 5}.dimension() == 6);
  CHECK(ObservableDictionary{DictionaryKind::AffineAugment, 0}.dimension() == 2);
  CHECK(ObservableDictionary{DictionaryKind::AdditiveComplex, 0}.dimension() == 1);
  CHECK(to_string(DictionaryKind::Shift) == "shift");
}

TEST_CASE("lift_shift and lift_ciphertext") {
  CHECK(lift_shift(base(5, 2, 8), 2, 0) == std::vector<Int>{1, 2, 4});
  CHECK(lift_shift(base(7, 3, 8), 3, 0) == std::vector<Int>{1, 3, 2, 6});
  CHECK(lift_shift(base(7, 3, 8), 0, 4) == std::vector<Int>{4});
  CHECK(lift_shift(base(7, 3, 2), 3, 5) == std::vector<Int>{5, 1, 3, 2});
  const DhParams p7(7, 3);
  CHECK(lift_ciphertext(4, p7, 3) == std::vector<Int>{4, 5, 1, 3});
  CHECK(lift_ciphertext(3, DhParams(5, 2), 2) == std::vector<Int>{3, 1, 2});
  CHECK(lift_ciphertext(1, p7, 5) == lift_shift(base(7, 3, 10), 5, 0));
  CHECK_THROWS_AS(lift_ciphertext(0, p7, 2), std::invalid_argument);
  CHECK_THROWS_AS(lift_ciphertext(7, p7, 2), std::invalid_argument);
}

TEST_CASE("lift_complex stores exact angles") {
  const DhParams p5(5, 2);
  const auto h = lift_complex(1, p5, 1);
  REQUIRE(h.size() == 2);
  CHECK(h[0] == TurnAngle::of(2, 5));
  CHECK(h[1] == TurnAngle::of(4, 5));
  CHECK(lift_complex(2, p5, 1)[0] == h[1]);
  CHECK(std::abs(h[0].to_complex() - std::polar(1.0, 2 * M_PI * 2 / 5)) < 1e-12);
}

TEST_CASE("complex observables shift exactly under the map") {
  for (long p : oracle::primes_between(5, 61)) {
    const long m = oracle::primitive_roots(p).front();
    const DhParams params(p, m);
    const std::size_t q = static_cast<std::size_t>(p - 1) / 2;
    for (long x = 1; x < p; ++x) {
      const auto now = lift_complex(x, params, q);
      const auto next = lift_complex(m * x % p, params, q);
      for (std::size_t j = 0; j < q; ++j) CHECK(next[j] == now[j + 1]);
      for (const auto& a : now) CHECK(a.order() == p);
    }
  }
}

TEST_CASE("canonical_alpha") {
  CHECK(canonical_alpha(5, 2) == rats({1, -1, 1}));
  CHECK(canonical_alpha(7, 3) == rats({1, -1, 0, 1}));
  CHECK(canonical_alpha(7, 4) == rats({0, 1, -1, 0, 1}));
  CHECK(canonical_alpha(11, 9) == rats({0, 0, 0, 0, 1, -1, 0, 0, 0, 1}));
  CHECK_THROWS_AS(canonical_alpha(7, 2), std::invalid_argument);
  CHECK(verify_closing(simulate(3, DhParams(7, 3), 1, 12), canonical_alpha(7, 6)));
}

TEST_CASE("verify_closing") {
  CHECK(verify_closing(base(5, 2, 8), rats({1, -1, 1})));
  CHECK(verify_closing(base(7, 3, 12), rats({1, -1, 0, 1})));
  CHECK_FALSE(verify_closing(base(5, 2, 8), rats({0, 2})));
  // The q~-1 solution holds modulo p only.
  CHECK(verify_closing_mod_p(base(7, 3, 12), rats({-1, 0, 0})));
  CHECK_FALSE(verify_closing(base(7, 3, 12), rats({-1, 0, 0})));
}

TEST_CASE("canonical alpha closes the orbit over two periods, p <= 199") {
  for (long p : oracle::primes_between(5, 199)) {
    const long m = oracle::primitive_roots(p).front();
    const std::size_t qt = static_cast<std::size_t>(p - 1) / 2;
    const auto traj = base(p, m, 3 * static_cast<std::size_t>(p));
    for (std::size_t q = qt; q <= static_cast<std::size_t>(p - 2); q += (q == qt ? 1 : qt / 2 + 1))
      CHECK(verify_closing(traj, canonical_alpha(p, q), 2));
    // Direct check of x_{k+q~+1} = x_k - x_{k+1} + x_{k+q~}.
    for (std::size_t k = 0; k < 2 * static_cast<std::size_t>(p - 1); ++k)
      CHECK(traj.at(k + qt + 1) == traj.at(k) - traj.at(k + 1) + traj.at(k + qt));
  }
}

TEST_CASE("hankel_system layout") {
  const auto traj = base(5, 2, 4);
  const auto sys = hankel_system(traj, 2);
  REQUIRE(sys.a.rows() == 4);
  REQUIRE(sys.a.cols() == 3);
  const long expected[4][3] = {{1, 2, 4}, {2, 4, 3}, {4, 3, 1}, {3, 1, 2}};
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 3; ++c) CHECK(sys.a(r, c) == expected[r][c]);
  CHECK(sys.b == rats({3, 1, 2, 4}));
  const auto s0 = hankel_system(traj, 0);
  CHECK(s0.a.column(0) == rats({1, 2, 4, 3}));
  CHECK(s0.b == rats({2, 4, 3, 1}));
  for (std::size_t q = 0; q <= 5; ++q) CHECK(hankel_system(base(7, 3, 6), q).a.rows() == 6);
}

TEST_CASE("solve_alpha_exact") {
  const auto t5 = base(5, 2, 4);
  const auto s2 = solve_alpha_exact(hankel_system(t5, 2));
  REQUIRE(s2.alpha);
  CHECK(*s2.alpha == rats({1, -1, 1}));
  const auto s1 = solve_alpha_exact(hankel_system(t5, 1));
  CHECK_FALSE(s1.alpha);
  CHECK(s1.rank_a == 2);
  CHECK(s1.rank_ab == 3);
  CHECK_FALSE(solve_alpha_exact(hankel_system(base(7, 3, 6), 2)).alpha);
}

TEST_CASE("Hankel ranks agree with an independent elimination") {
  for (long p : oracle::primes_between(5, 31)) {
    const long m = oracle::primitive_roots(p).back();
    const auto traj = base(p, m, static_cast<std::size_t>(p));
    for (std::size_t q = 0; q + 2 <= static_cast<std::size_t>(p); ++q) {
      const auto sys = hankel_system(traj, q);
      std::vector<std::vector<Int>> a, ab;
      for (std::size_t r = 0; r < sys.a.rows(); ++r) {
        std::vector<Int> row;
        for (const auto& v : sys.a.row(r)) row.push_back(v.get_num());
        a.push_back(row);
        row.push_back(sys.b[r].get_num());
        ab.push_back(row);
      }
      const auto solved = solve_alpha_exact(sys);
      CHECK(solved.rank_a == oracle::naive_rank(a));
      CHECK(solved.rank_ab == oracle::naive_rank(ab));
    }
  }
}

TEST_CASE("below q~ no integer recurrence closes") {
  for (long p : oracle::primes_between(5, 199)) {
    const long m = oracle::primitive_roots(p).front();
    const auto traj = base(p, m, 2 * static_cast<std::size_t>(p));
    const std::size_t qt = static_cast<std::size_t>(p - 1) / 2;
    for (std::size_t q = 0; q < qt; q += (p > 61 ? 7 : 1)) {
      const auto s = solve_alpha_exact(hankel_system(traj, q));
      if (s.alpha) CHECK_FALSE(verify_closing(traj, *s.alpha));
    }
  }
}

TEST_CASE("minimal lifting dimension") {
  CHECK(minimal_lifting_dimension(DhParams(5, 2)) == 3);
  CHECK(minimal_lifting_dimension(DhParams(7, 3)) == 4);
  CHECK(minimal_lifting_dimension(DhParams(23, 5)) == 12);
  const auto scan = scan_lifting_dimension(DhParams(7, 3));
  CHECK(scan.dimension == 4);
  CHECK(scan.alpha == rats({1, -1, 0, 1}));
  REQUIRE(scan.steps.size() == 4);
  CHECK_FALSE(scan.steps[2].closes);
  CHECK(scan.steps[3].closes);
}

TEST_CASE("companion powers reproduce the trajectory") {
  for (long p : oracle::primes_between(5, 61)) {
    const long m = oracle::primitive_roots(p).front();
    const std::size_t qt = static_cast<std::size_t>(p - 1) / 2;
    const auto traj = base(p, m, 2 * static_cast<std::size_t>(p));
    const auto a = CompanionSystem(qt, canonical_alpha(p, qt)).matrix();
    auto z = to_rationals(lift_shift(traj, qt, 0));
    for (std::size_t k = 0; k <= 2 * static_cast<std::size_t>(p - 1); ++k) {
      CHECK(z[0] == traj.at(k));
      z = a * z;
    }
  }
}

TEST_CASE("companion system structure") {
  const CompanionSystem sys(3, rats({1, -1, 0, 1}));
  const auto a = sys.matrix();
  CHECK(a(0, 1) == 1);
  CHECK(a(2, 3) == 1);
  CHECK(a(3, 0) == 1);
  CHECK(a(3, 1) == -1);
  CHECK(a(3, 3) == 1);
  CHECK(sys.characteristic_polynomial() == rats({-1, 1, 0, -1, 1}));
  CHECK_THROWS_AS(CompanionSystem(3, rats({1, 2})), std::invalid_argument);
}

TEST_CASE("full period system and index lookup") {
  const auto full = full_period_system(DhParams(5, 2));
  CHECK(full.dimension() == 4);
  CHECK(full.alpha == rats({1, 0, 0, 0}));
  const auto a = full.matrix();
  for (std::size_t r = 0; r < 3; ++r) CHECK(a(r, r + 1) == 1);
  CHECK(a(3, 0) == 1);
  CHECK(verify_closing(base(5, 2, 8), full.alpha));
  for (long p : oracle::primes_between(5, 61)) {
    const long m = oracle::primitive_roots(p).front();
    const auto traj = base(p, m, 2 * static_cast<std::size_t>(p));
    const std::size_t qt = static_cast<std::size_t>(p - 1) / 2;
    CHECK(traj.at(p - 1) == traj.at(qt - 1) - traj.at(qt) + traj.at(p - 2));
    const DhParams params(p, m);
    for (long e = 1; e < p; ++e) CHECK(index_lookup_attack(mod_pow(m, e, p), params) == e);
  }
  CHECK(index_lookup_attack(4, DhParams(7, 3)) == 4);
  CHECK(index_lookup_attack(3, DhParams(7, 3)) == 1);
  CHECK(index_lookup_attack(1, DhParams(7, 3)) == 6);
}

TEST_CASE("affine augmentation") {
  CHECK(affine_augment_system(2, 2, 1).generate(5) == std::vector<Int>{1, 4, 10, 22, 46});
  CHECK(affine_augment_system(1, 0, 9).generate(4) == std::vector<Int>{9, 9, 9, 9});
  CHECK(affine_augment_system(3, 1, 0).generate(4) == std::vector<Int>{0, 1, 4, 13});
  const auto lift = affine_augment_system(2, 2, 1);
  CHECK(lift.matrix.rows() == 2);
  CHECK(lift.z0 == std::vector<Int>{1, 2});
  CHECK(AffineLift::recover(lift.step(lift.z0)) == 4);
}

TEST_CASE("additive complex lift") {
  const auto l3 = additive_complex_lift(3, 0);
  CHECK(l3.generate(6) == std::vector<Int>{0, 1, 2, 0, 1, 2});
  CHECK(AdditiveComplexLift::state_dimension == 1);
  CHECK(additive_complex_lift(4, 0).generate(5) == std::vector<Int>{0, 1, 2, 3, 0});
  auto z = l3.z0;
  for (int k = 0; k < 9; ++k, z = l3.step(z)) {
    CHECK(l3.recover(z) == k % 3);
    CHECK(l3.recover(z.to_complex()) == k % 3);
  }
  CHECK_THROWS_AS(additive_complex_lift(0, 0), std::invalid_argument);
}
