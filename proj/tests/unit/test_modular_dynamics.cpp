#include <doctest.h>

#include <koopdh/modular_dynamics.hpp>

#include "../oracles.hpp"

#include <set>
#include <stdexcept>

using namespace koopdh;

TEST_CASE("mod_pow matches repeated multiplication") {
  CHECK(mod_pow(3, 4, 7) == 4);
  CHECK(mod_pow(5, 0, 23) == 1);
  CHECK(mod_pow(-2, 3, 7) == 6);
  for (int i = 0; i < 200; ++i) {
    const long p = oracle::primes_between(5, 199)[oracle::uniform(0, 43)];
    const long b = oracle::uniform(0, 3 * p);
    const long e = oracle::uniform(0, 3 * p);
    CHECK(mod_pow(b, e, p) == oracle::slow_pow(b, e, p));
  }
  CHECK_THROWS_AS(mod_pow(2, -1, 7), std::invalid_argument);
  CHECK_THROWS_AS(mod_pow(2, 3, 1), std::invalid_argument);
}

TEST_CASE("Fermat: m^(p-1) = 1 for every valid parameter set") {
  for (long p : oracle::primes_between(5, 199))
    for (long m : oracle::primitive_roots(p)) CHECK(mod_pow(m, p - 1, p) == 1);
}

TEST_CASE("primality and primitive roots") {
  for (long n = -3; n < 400; ++n) CHECK(is_prime(n) == oracle::slow_is_prime(n));
  CHECK(is_primitive_root(2, 5));
  CHECK_FALSE(is_primitive_root(4, 5));
  CHECK(is_primitive_root(3, 7));
  CHECK(find_primitive_root(5) == 2);
  CHECK(find_primitive_root(7) == 3);
  CHECK(find_primitive_root(23) == 5);
  for (long p : oracle::primes_between(5, 199)) {
    const auto expected = oracle::primitive_roots(p);
    const auto got = all_primitive_roots(p);
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == expected[i]);
    CHECK(find_primitive_root(p) == expected.front());
  }
  CHECK(prime_factors(360) == std::vector<Int>{2, 3, 5});
  CHECK_THROWS_AS(find_primitive_root(3), std::invalid_argument);
  CHECK_THROWS_AS(find_primitive_root(21), std::invalid_argument);
}

TEST_CASE("DhParams validates its arguments") {
  CHECK_NOTHROW(DhParams(7, 3));
  CHECK_THROWS_AS(DhParams(7, 2), std::invalid_argument);
  CHECK_THROWS_AS(DhParams(3, 2), std::invalid_argument);
  CHECK_THROWS_AS(DhParams(9, 2), std::invalid_argument);
  CHECK_THROWS_AS(DhParams(7, 10), std::invalid_argument);
  const DhParams params(23, 5);
  CHECK(params.period() == 22);
  CHECK(params.half_period() == 11);
}

TEST_CASE("simulate") {
  const auto a = simulate(2, DhParams(5, 2), 1, 4);
  CHECK(a.values == std::vector<Int>{1, 2, 4, 3, 1});
  const auto b = simulate(3, DhParams(7, 3), 1, 6);
  CHECK(b.values == std::vector<Int>{1, 3, 2, 6, 4, 5, 1});
  CHECK(simulate(5, DhParams(23, 5), 1, 0).values == std::vector<Int>{1});
  CHECK(b.at(20) == oracle::slow_pow(3, 20, 7));
  CHECK_THROWS_AS(simulate(7, DhParams(7, 3), 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(simulate(3, DhParams(7, 3), 0, 3), std::invalid_argument);
}

TEST_CASE("orbits visit every residue once and are periodic") {
  for (long p : oracle::primes_between(5, 199)) {
    for (long m : oracle::primitive_roots(p)) {
      const DhParams params(p, m);
      const auto traj = simulate(m, params, 1, 2 * static_cast<std::size_t>(p - 1));
      std::set<Int> seen(traj.values.begin(), traj.values.begin() + (p - 1));
      CHECK(seen.size() == static_cast<std::size_t>(p - 1));
      CHECK(*seen.begin() == 1);
      CHECK(*seen.rbegin() == p - 1);
      for (std::size_t k = 0; k < traj.size(); ++k) CHECK(traj.values[k] == traj.values[k % (p - 1)]);
    }
  }
}

TEST_CASE("Euler's criterion") {
  CHECK(euler_criterion(2, 7) == 1);
  CHECK(euler_criterion(1, 11) == 1);
  for (long p : oracle::primes_between(5, 199)) {
    CHECK(euler_criterion(find_primitive_root(p), p) == -1);
    for (long x = 1; x < p; ++x) {
      bool square = false;
      for (long y = 1; y < p && !square; ++y) square = (y * y) % p == x;
      CHECK(euler_criterion(x, p) == (square ? 1 : -1));
    }
  }
}

TEST_CASE("dh_exchange") {
  const auto t = dh_exchange(DhParams(7, 3), 2, 5);
  CHECK(t.c_e == 2);
  CHECK(t.c_d == 5);
  CHECK(t.c_ed == 4);
  const auto u = dh_exchange(DhParams(5, 2), 3, 2);
  CHECK(u.c_e == 3);
  CHECK(u.c_d == 4);
  CHECK(u.c_ed == 4);
  const auto one = dh_exchange(DhParams(11, 2), 1, 1);
  CHECK(one.c_e == 2);
  CHECK(one.c_ed == 2);
  CHECK_THROWS_AS(dh_exchange(DhParams(7, 3), 0, 2), std::invalid_argument);
}

TEST_CASE("discrete log round trip") {
  CHECK(discrete_log_bruteforce(4, DhParams(7, 3)) == 4);
  CHECK(discrete_log_bruteforce(3, DhParams(7, 3)) == 1);
  CHECK(discrete_log_bruteforce(1, DhParams(7, 3)) == 6);
  for (long p : oracle::primes_between(5, 199)) {
    const long m = oracle::primitive_roots(p).front();
    const DhParams params(p, m);
    for (long e = 1; e < p; ++e) {
      const Int c = mod_pow(m, e, p);
      CHECK(discrete_log_bruteforce(c, params) == e);
      CHECK(oracle::orbit_log(c.get_si(), m, p) == e);
    }
  }
  CHECK_THROWS_AS(discrete_log_bruteforce(0, DhParams(7, 3)), std::invalid_argument);
}

TEST_CASE("shared_secret_intersection") {
  const auto a = shared_secret_intersection(2, 5, DhParams(7, 3));
  CHECK(a.secret == 4);
  CHECK(a.e == 2);
  CHECK(a.d == 5);
  const auto b = shared_secret_intersection(3, 4, DhParams(5, 2));
  CHECK(b.secret == 4);
  CHECK(b.e == 3);
  CHECK(b.d == 2);
  const auto c = shared_secret_intersection(5, 5, DhParams(23, 5));
  CHECK(c.secret == 5);
  CHECK(c.e == 1);
  CHECK(c.d == 1);
}

TEST_CASE("shared secret agrees with the exchange for random transcripts") {
  for (int i = 0; i < 300; ++i) {
    const auto primes = oracle::primes_between(5, 61);
    const long p = primes[oracle::uniform(0, static_cast<long>(primes.size()) - 1)];
    const auto roots = oracle::primitive_roots(p);
    const long m = roots[oracle::uniform(0, static_cast<long>(roots.size()) - 1)];
    const long e = oracle::uniform(1, p - 1), d = oracle::uniform(1, p - 1);
    const DhParams params(p, m);
    const auto t = dh_exchange(params, e, d);
    const auto r = shared_secret_intersection(t.c_e, t.c_d, params);
    CHECK(r.secret == t.c_ed);
    CHECK(r.secret == oracle::slow_pow(m, Int(e) * d, p));
  }
}
