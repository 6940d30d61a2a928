#pragma once

// Observable dictionaries and companion-form linear representations of the
// modular dynamics, together with the Hankel/rank machinery that decides the
// minimal lifting dimension.

#include <koopdh/cyclotomic.hpp>
#include <koopdh/matrix.hpp>
#include <koopdh/modular_dynamics.hpp>

#include <optional>
#include <string_view>
#include <vector>

namespace koopdh {

enum class DictionaryKind { Shift, ComplexExp, AffineAugment, AdditiveComplex };

std::string_view to_string(DictionaryKind kind);

/// Which observables lift the state, and how many.
struct ObservableDictionary {
  DictionaryKind kind = DictionaryKind::Shift;
  std::size_t q = 0;

  /// Number of lifted coordinates.
  std::size_t dimension() const;
};

/// Companion matrix of order q: shift rows on top, alpha in the last row.
struct CompanionSystem {
  std::size_t q = 0;
  std::vector<Rational> alpha;

  CompanionSystem(std::size_t order, std::vector<Rational> coefficients);

  std::size_t dimension() const { return q + 1; }
  Matrix<Rational> matrix() const;
  /// lambda^{q+1} - sum_j alpha_j lambda^j, constant term first.
  std::vector<Rational> characteristic_polynomial() const;
};

/// (A~, b~) from the closing condition over one period, with wraparound.
struct HankelSystem {
  Matrix<Rational> a;
  std::vector<Rational> b;
};

struct AlphaSolve {
  std::optional<std::vector<Rational>> alpha;
  std::size_t rank_a = 0;
  std::size_t rank_ab = 0;
};

struct LiftingScanStep {
  std::size_t q = 0;
  std::size_t rank_a = 0;
  std::size_t rank_ab = 0;
  bool closes = false;
};

struct LiftingScan {
  std::size_t dimension = 0;
  std::vector<Rational> alpha;
  std::vector<LiftingScanStep> steps;
};

/// (x_k, ..., x_{k+q}).
std::vector<Int> lift_shift(const ModTrajectory& traj, std::size_t q, std::size_t k);

/// (c, m c, ..., m^q c) mod p, computable by anyone who observes c.
std::vector<Int> lift_ciphertext(const Int& c, const DhParams& params, std::size_t q);

/// Angles of h_j(x) = exp(i 2pi/p m^{j+1} x), j = 0..q, as exact turns.
std::vector<TurnAngle> lift_complex(const Int& x, const DhParams& params, std::size_t q);

/// Sparse alpha with alpha_{q-q~} = 1, alpha_{q-q~+1} = -1, alpha_q = 1.
std::vector<Rational> canonical_alpha(const Int& p, std::size_t q);

/// True iff x_{k+q+1} = sum_j alpha_j x_{k+j} over the rationals for every
/// k in [0, periods*(p-1) - 1]. One period suffices by periodicity.
bool verify_closing(const ModTrajectory& traj, const std::vector<Rational>& alpha,
                    std::size_t periods = 1);

/// The same recurrence checked only modulo p (alpha must be integral).
bool verify_closing_mod_p(const ModTrajectory& traj, const std::vector<Rational>& alpha);

HankelSystem hankel_system(const ModTrajectory& traj, std::size_t q);

AlphaSolve solve_alpha_exact(const HankelSystem& sys);

/// Scans q = 0, 1, ... until the Hankel system has a closing solution.
LiftingScan scan_lifting_dimension(const DhParams& params);

std::size_t minimal_lifting_dimension(const DhParams& params);

/// The (p-1)-dimensional cyclic shift with alpha = (1, 0, ..., 0).
CompanionSystem full_period_system(const DhParams& params);

/// Finds c among the entries of z_0 lifted at q = p-2. Entry 0 maps to p-1.
Int index_lookup_attack(const Int& c, const DhParams& params);

/// z_k = (x_k, a) with z_{k+1} = [m 1; 0 1] z_k for x_{k+1} = m x_k + a.
struct AffineLift {
  Matrix<Int> matrix;
  std::vector<Int> z0;

  std::vector<Int> step(const std::vector<Int>& z) const;
  static Int recover(const std::vector<Int>& z) { return z.at(0); }
  /// First n recovered states.
  std::vector<Int> generate(std::size_t n) const;
};

AffineLift affine_augment_system(const Int& m, const Int& a, const Int& x0);

/// Scalar lift z_k = exp(i 2pi x_k / n) of x_{k+1} = x_k + 1 mod n.
struct AdditiveComplexLift {
  Int modulus;
  TurnAngle multiplier;
  TurnAngle z0;

  static constexpr std::size_t state_dimension = 1;

  TurnAngle step(const TurnAngle& z) const { return z + multiplier; }
  /// Exact inverse map via the angle stored as a fraction of a turn.
  Int recover(const TurnAngle& z) const;
  /// Inverse map from a floating point sample via the principal argument.
  Int recover(std::complex<double> z) const;
  std::vector<Int> generate(std::size_t n) const;
};

AdditiveComplexLift additive_complex_lift(const Int& modulus, const Int& x0);

}  // namespace koopdh
