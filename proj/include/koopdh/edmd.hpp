#pragma once

// Extended dynamic mode decomposition in exact rational arithmetic.
// Lifted states are stored as columns: Z = [z_0 ... z_{N-1}], Z+ = [z_1 ... z_N].

#include <koopdh/koopman_lift.hpp>
#include <koopdh/matrix.hpp>

#include <optional>
#include <span>
#include <string_view>

namespace koopdh {

struct EdmdDataset {
  std::size_t q = 0;
  std::size_t n = 0;
  Matrix<Rational> z;
  Matrix<Rational> z_plus;
  std::size_t rank_z = 0;
};

enum class FitKind { Unique, MinimumNorm };

std::string_view to_string(FitKind kind);

struct FittedOperator {
  Matrix<Rational> a_hat;
  /// ||Z+ - A_hat Z||_F^2, exact.
  Rational residual_sq;
  FitKind kind = FitKind::Unique;

  /// Floating mirror of the Frobenius norm itself.
  double residual() const;
};

struct OperatorComparison {
  bool entrywise_equal = false;
  bool prediction_equivalent = false;
  /// First k with A_hat^k z_0 != z_k, when prediction fails.
  std::optional<std::size_t> first_mismatch;
};

struct UnderparameterizedFit {
  FittedOperator fit;
  /// Over one period: how many k have (A_hat^k z_0)_0 == x_k exactly.
  std::size_t exact_predictions = 0;
  std::size_t horizon = 0;
  /// max_k |(A_hat^k z_0)_0 - x_k| over the same horizon.
  Rational max_prediction_error;
};

/// Uses only the stored samples: needs at least n + q + 1 of them.
EdmdDataset build_dataset(std::span<const Int> series, std::size_t q, std::size_t n);
EdmdDataset build_dataset(const ModTrajectory& traj, std::size_t q, std::size_t n);

/// N >= q~ + 1 and q >= q~ with q~ = (p-1)/2.
bool check_assumption(const EdmdDataset& dataset, const Int& p);

/// Least-squares operator K = Z+ Z^+: unique when Z has full row rank,
/// minimum Frobenius norm otherwise.
FittedOperator edmd_fit(const EdmdDataset& dataset);

OperatorComparison compare_operators(const FittedOperator& fitted, const CompanionSystem& analytic,
                                     const ModTrajectory& traj, std::size_t horizon);

/// Fit with q < (p-1)/2; the residual is expected to be positive.
UnderparameterizedFit edmd_underparameterized(const ModTrajectory& traj, std::size_t q,
                                              std::size_t n);

}  // namespace koopdh
