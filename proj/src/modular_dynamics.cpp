#include <koopdh/modular_dynamics.hpp>

#include <stdexcept>
#include <string>

namespace koopdh {

namespace {

void require_unit(const Int& v, const Int& p, const char* what) {
  if (v < 1 || v >= p)
    throw std::invalid_argument(std::string(what) + " must lie in [1, p-1], got " + to_string(v));
}

}  // namespace

DhParams::DhParams(Int p, Int m) : p_(std::move(p)), m_(std::move(m)) {
  if (p_ <= 3 || !is_prime(p_))
    throw std::invalid_argument("DhParams: p must be a prime > 3, got " + to_string(p_));
  if (m_ < 2 || m_ >= p_)
    throw std::invalid_argument("DhParams: m must lie in [2, p-1], got " + to_string(m_));
  if (!is_primitive_root(m_, p_))
    throw std::invalid_argument("DhParams: " + to_string(m_) + " is not a primitive root mod " +
                                to_string(p_));
}

Int ModTrajectory::at(std::size_t k) const {
  if (k < values.size()) return values[k];
  return mod_floor(x0 * mod_pow(multiplier, Int(static_cast<unsigned long>(k)), params.p()),
                   params.p());
}

Int mod_pow(const Int& base, const Int& exp, const Int& p) {
  if (p < 2) throw std::invalid_argument("mod_pow: modulus must be >= 2");
  if (exp < 0) throw std::invalid_argument("mod_pow: exponent must be nonnegative");
  Int result = 1;
  Int square = mod_floor(base, p);
  Int rest = exp;
  while (rest > 0) {
    if (mpz_odd_p(rest.get_mpz_t())) result = mod_floor(result * square, p);
    square = mod_floor(square * square, p);
    rest >>= 1;
  }
  return mod_floor(result, p);
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (mpz_even_p(n.get_mpz_t())) return false;
  for (Int d = 3; d * d <= n; d += 2)
    if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) return false;
  return true;
}

std::vector<Int> prime_factors(Int n) {
  if (n < 1) throw std::invalid_argument("prime_factors: argument must be positive");
  std::vector<Int> out;
  for (Int d = 2; d * d <= n; ++d) {
    if (!mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) continue;
    out.push_back(d);
    while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool is_primitive_root(const Int& m, const Int& p) {
  if (!is_prime(p)) throw std::invalid_argument("is_primitive_root: " + to_string(p) + " is not prime");
  require_unit(m, p, "is_primitive_root: m");
  const Int order = p - 1;
  for (const auto& r : prime_factors(order))
    if (mod_pow(m, order / r, p) == 1) return false;
  return true;
}

Int find_primitive_root(const Int& p) {
  if (p <= 3 || !is_prime(p))
    throw std::invalid_argument("find_primitive_root: p must be a prime > 3, got " + to_string(p));
  for (Int m = 2; m < p; ++m)
    if (is_primitive_root(m, p)) return m;
  throw ConsistencyError("find_primitive_root: no primitive root found for " + to_string(p));
}

std::vector<Int> all_primitive_roots(const Int& p) {
  if (p <= 3 || !is_prime(p))
    throw std::invalid_argument("all_primitive_roots: p must be a prime > 3, got " + to_string(p));
  std::vector<Int> out;
  for (Int m = 2; m < p; ++m)
    if (is_primitive_root(m, p)) out.push_back(m);
  return out;
}

ModTrajectory simulate(const Int& multiplier, const DhParams& params, const Int& x0,
                       std::size_t steps) {
  const Int& p = params.p();
  if (mod_floor(multiplier, p) == 0)
    throw std::invalid_argument("simulate: multiplier must be coprime to p");
  if (mod_floor(x0, p) == 0) throw std::invalid_argument("simulate: x0 = 0 mod p collapses the orbit");
  require_unit(x0, p, "simulate: x0");

  ModTrajectory traj{params, mod_floor(multiplier, p), x0, {}};
  traj.values.reserve(steps + 1);
  traj.values.push_back(x0);
  for (std::size_t k = 0; k < steps; ++k)
    traj.values.push_back(mod_floor(traj.multiplier * traj.values.back(), p));
  return traj;
}

int euler_criterion(const Int& m, const Int& p) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("euler_criterion: p must be an odd prime");
  if (mod_floor(m, p) == 0) throw std::invalid_argument("euler_criterion: gcd(m, p) != 1");
  const Int r = mod_pow(m, (p - 1) / 2, p);
  if (r == 1) return 1;
  if (r == p - 1) return -1;
  throw ConsistencyError("euler_criterion: residue outside {1, p-1}");
}

DhTranscript dh_exchange(const DhParams& params, const Int& e, const Int& d) {
  const Int& p = params.p();
  require_unit(e, p, "dh_exchange: e");
  require_unit(d, p, "dh_exchange: d");
  DhTranscript t{params, e, d, mod_pow(params.m(), e, p), mod_pow(params.m(), d, p), 0};
  t.c_ed = mod_pow(t.c_e, d, p);
  if (mod_pow(t.c_d, e, p) != t.c_ed)
    throw ConsistencyError("dh_exchange: c_e^d and c_d^e disagree");
  return t;
}

Int discrete_log_bruteforce(const Int& c, const DhParams& params) {
  const Int& p = params.p();
  if (mod_floor(c, p) == 0) throw std::invalid_argument("discrete_log_bruteforce: c = 0 mod p");
  require_unit(c, p, "discrete_log_bruteforce: c");
  Int x = params.m();
  for (Int e = 1; e < p; ++e) {
    if (x == c) return e;
    x = mod_floor(x * params.m(), p);
  }
  throw ConsistencyError("discrete_log_bruteforce: orbit never reached " + to_string(c));
}

IntersectionResult shared_secret_intersection(const Int& c_e, const Int& c_d,
                                              const DhParams& params) {
  const Int& p = params.p();
  require_unit(c_e, p, "shared_secret_intersection: c_e");
  require_unit(c_d, p, "shared_secret_intersection: c_d");

  // States of the c_e-system w_d and of the base system x_d for d in [1, p-1].
  const auto n = static_cast<std::size_t>(p.get_ui()) - 1;
  std::vector<Int> w(n + 1), x(n + 1);
  w[0] = 1;
  x[0] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    w[k] = mod_floor(w[k - 1] * c_e, p);
    x[k] = mod_floor(x[k - 1] * params.m(), p);
  }

  IntersectionResult out;
  Int y = 1;  // c_d-system
  for (std::size_t e = 1; e <= n; ++e) {
    y = mod_floor(y * c_d, p);
    for (std::size_t d = 1; d <= n; ++d) {
      if (w[d] != y) continue;
      const Int ed = Int(static_cast<unsigned long>(e)) * static_cast<unsigned long>(d);
      if (mod_pow(params.m(), ed, p) != y) continue;
      if (x[e] == c_e && x[d] == c_d) {
        out.secret = y;
        out.e = static_cast<unsigned long>(e);
        out.d = static_cast<unsigned long>(d);
        return out;
      }
      ++out.spurious_candidates;
    }
  }
  throw ConsistencyError("shared_secret_intersection: no intersection found");
}

}  // namespace koopdh
