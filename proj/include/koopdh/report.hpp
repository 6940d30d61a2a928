#pragma once

// JSON serialization of results. Exact rationals are written as
// {"num": "...", "den": "..."} string pairs; floating mirrors carry 15
// significant digits.

#include <koopdh/edmd.hpp>
#include <koopdh/koopman_lift.hpp>
#include <koopdh/linear_complexity.hpp>
#include <koopdh/modular_dynamics.hpp>
#include <koopdh/spectral_recovery.hpp>

#include <json.hpp>

#include <string_view>

namespace koopdh {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kToolVersion = "0.1.0";

Json rational_json(const Rational& v);
/// Accepts {"num","den"}, a decimal string, or a JSON integer.
Rational rational_from_json(const Json& j);
Json rationals_json(const std::vector<Rational>& v);
Json matrix_json(const Matrix<Rational>& m);
Matrix<Rational> matrix_from_json(const Json& j);
Json integer_json(const Int& v);
Json integers_json(const std::vector<Int>& v);
Json float_json(double v);

Json to_json(const DhParams& params);
Json to_json(const DhTranscript& t);
Json to_json(const IntersectionResult& r);
Json to_json(const LiftingScan& scan);
Json to_json(const SpectralDecomposition& dec);
Json to_json(const ExponentEstimate& est);
Json to_json(const EdmdDataset& ds);
Json to_json(const FittedOperator& fit);
Json to_json(const OperatorComparison& cmp);
Json to_json(const UnderparameterizedFit& fit);
Json to_json(const LinearComplexityResult& lc);
Json to_json(const KoopmanLfsrComparison& cmp);

/// {"schema_version": ..., "command": command}
Json report_header(std::string_view command);

}  // namespace koopdh
