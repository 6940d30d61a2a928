#include <koopdh/edmd.hpp>
#include <koopdh/exact_linalg.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace koopdh {

namespace {

std::vector<Rational> lifted(const ModTrajectory& traj, std::size_t q, std::size_t k) {
  return to_rationals(lift_shift(traj, q, k));
}

}  // namespace

std::string_view to_string(FitKind kind) {
  return kind == FitKind::Unique ? "unique" : "minimum-norm";
}

double FittedOperator::residual() const { return std::sqrt(residual_sq.get_d()); }

EdmdDataset build_dataset(std::span<const Int> series, std::size_t q, std::size_t n) {
  if (n == 0) throw std::invalid_argument("build_dataset: need at least one snapshot pair");
  if (series.size() < n + q + 1)
    throw std::invalid_argument("build_dataset: insufficient data, need " + std::to_string(n + q + 1) +
                                " samples, have " + std::to_string(series.size()));
  EdmdDataset ds{q, n, Matrix<Rational>(q + 1, n), Matrix<Rational>(q + 1, n), 0};
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j <= q; ++j) {
      ds.z(j, k) = series[k + j];
      ds.z_plus(j, k) = series[k + j + 1];
    }
  ds.rank_z = rank(ds.z);
  return ds;
}

EdmdDataset build_dataset(const ModTrajectory& traj, std::size_t q, std::size_t n) {
  return build_dataset(std::span<const Int>(traj.values), q, n);
}

bool check_assumption(const EdmdDataset& dataset, const Int& p) {
  const Int qt = (p - 1) / 2;
  return Int(static_cast<unsigned long>(dataset.n)) >= qt + 1 &&
         Int(static_cast<unsigned long>(dataset.q)) >= qt;
}

FittedOperator edmd_fit(const EdmdDataset& dataset) {
  if (dataset.n == 0 || dataset.z.empty()) throw std::invalid_argument("edmd_fit: empty dataset");
  FittedOperator fit;
  if (dataset.rank_z == dataset.z.rows()) {
    const auto zt = dataset.z.transposed();
    const auto gram_inv = inverse(dataset.z * zt);
    if (!gram_inv) throw ConsistencyError("edmd_fit: Z Z^T singular despite full row rank");
    fit.a_hat = dataset.z_plus * zt * (*gram_inv);
    fit.kind = FitKind::Unique;
  } else {
    fit.a_hat = dataset.z_plus * pseudo_inverse(dataset.z);
    fit.kind = FitKind::MinimumNorm;
  }
  fit.residual_sq = frobenius_sq(dataset.z_plus - fit.a_hat * dataset.z);
  return fit;
}

OperatorComparison compare_operators(const FittedOperator& fitted, const CompanionSystem& analytic,
                                     const ModTrajectory& traj, std::size_t horizon) {
  if (fitted.a_hat.rows() != analytic.dimension() || fitted.a_hat.cols() != analytic.dimension())
    throw std::invalid_argument("compare_operators: dimension mismatch");
  OperatorComparison out;
  out.entrywise_equal = fitted.a_hat == analytic.matrix();
  auto z = lifted(traj, analytic.q, 0);
  for (std::size_t k = 0; k <= horizon; ++k) {
    if (z != lifted(traj, analytic.q, k)) {
      out.first_mismatch = k;
      break;
    }
    z = fitted.a_hat * z;
  }
  out.prediction_equivalent = !out.first_mismatch;
  return out;
}

UnderparameterizedFit edmd_underparameterized(const ModTrajectory& traj, std::size_t q,
                                              std::size_t n) {
  const Int qt = traj.params.half_period();
  if (Int(static_cast<unsigned long>(q)) >= qt)
    throw std::invalid_argument("edmd_underparameterized: q must be below (p-1)/2");
  UnderparameterizedFit out;
  out.fit = edmd_fit(build_dataset(traj, q, n));
  out.horizon = traj.params.period().get_ui();
  out.max_prediction_error = 0;
  auto z = lifted(traj, q, 0);
  for (std::size_t k = 0; k < out.horizon; ++k) {
    const Rational err = abs(z[0] - Rational(traj.at(k)));
    if (err == 0) ++out.exact_predictions;
    if (err > out.max_prediction_error) out.max_prediction_error = err;
    z = out.fit.a_hat * z;
  }
  return out;
}

}  // namespace koopdh
