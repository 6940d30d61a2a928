#pragma once

// Integer arithmetic over Z_p^*, the Diffie-Hellman exchange, and the modular
// dynamical systems x_{k+1} = multiplier * x_k mod p built from it.

#include <koopdh/numeric.hpp>

#include <cstddef>
#include <vector>

namespace koopdh {

/// Public Diffie-Hellman parameters: prime p > 3 and a primitive root m.
/// Construction validates both.
class DhParams {
 public:
  DhParams(Int p, Int m);

  const Int& p() const { return p_; }
  const Int& m() const { return m_; }
  /// p - 1, the period of every orbit of the base system.
  Int period() const { return p_ - 1; }
  /// (p - 1) / 2.
  Int half_period() const { return (p_ - 1) / 2; }

  friend bool operator==(const DhParams& a, const DhParams& b) {
    return a.p_ == b.p_ && a.m_ == b.m_;
  }

 private:
  Int p_;
  Int m_;
};

/// Finite orbit of x_{k+1} = multiplier * x_k mod p.
struct ModTrajectory {
  DhParams params;
  Int multiplier;
  Int x0;
  std::vector<Int> values;

  std::size_t size() const { return values.size(); }

  /// State at step k. Steps past the stored prefix are continued with the
  /// map itself, which agrees with periodic extension.
  Int at(std::size_t k) const;
};

struct DhTranscript {
  DhParams params;
  Int e, d;
  Int c_e, c_d;
  Int c_ed;
};

struct IntersectionResult {
  Int secret;
  Int e;
  Int d;
  /// Pairs that passed the intersection and x_{ed} checks but whose steps
  /// disagree with the base trajectory's endpoints (see shared_secret_intersection).
  std::size_t spurious_candidates = 0;
};

/// base^exp mod p by square-and-multiply. Negative bases are reduced first.
Int mod_pow(const Int& base, const Int& exp, const Int& p);

/// Deterministic trial division.
bool is_prime(const Int& n);

/// Distinct prime factors in increasing order.
std::vector<Int> prime_factors(Int n);

bool is_primitive_root(const Int& m, const Int& p);

/// Smallest primitive root of a prime p > 3.
Int find_primitive_root(const Int& p);

/// Every primitive root of p, ascending.
std::vector<Int> all_primitive_roots(const Int& p);

ModTrajectory simulate(const Int& multiplier, const DhParams& params, const Int& x0,
                       std::size_t steps);

/// +1 when m is a quadratic residue mod p, -1 otherwise.
int euler_criterion(const Int& m, const Int& p);

DhTranscript dh_exchange(const DhParams& params, const Int& e, const Int& d);

/// Walks the base orbit until it reaches c; returns the exponent in [1, p-1].
Int discrete_log_bruteforce(const Int& c, const DhParams& params);

/// Brute-force search for the shared secret as a trajectory intersection.
///
/// Steps (e, d) are scanned in lexicographic order. A candidate must satisfy
/// y_e = w_d (states of the c_d- and c_e-systems), y_e = x_{ed} (state of the
/// base system at step e*d) and the endpoint conditions x_e = c_e, x_d = c_d.
/// Without the endpoint conditions the first candidate can carry a wrong
/// secret, so those pairs are only counted.
IntersectionResult shared_secret_intersection(const Int& c_e, const Int& c_d,
                                              const DhParams& params);

}  // namespace koopdh
