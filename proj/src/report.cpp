#include <koopdh/report.hpp>

#include <cstdio>
#include <stdexcept>
#include <string>

namespace koopdh {

Json rational_json(const Rational& v) {
  return Json{{"num", v.get_num().get_str()}, {"den", v.get_den().get_str()}};
}

Rational rational_from_json(const Json& j) {
  Rational r;
  if (j.is_object()) {
    Int num, den;
    if (num.set_str(j.at("num").get<std::string>(), 10) != 0 ||
        den.set_str(j.at("den").get<std::string>(), 10) != 0 || den == 0)
      throw std::invalid_argument("malformed rational " + j.dump());
    r = Rational(num, den);
  } else if (j.is_string()) {
    if (r.set_str(j.get<std::string>(), 10) != 0 || r.get_den() == 0)
      throw std::invalid_argument("malformed rational " + j.dump());
  } else if (j.is_number_integer()) {
    r = Rational(Int(j.dump()));
  } else {
    throw std::invalid_argument("expected an exact number, got " + j.dump());
  }
  r.canonicalize();
  return r;
}

Json rationals_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rational_json(x));
  return out;
}

Json matrix_json(const Matrix<Rational>& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (const auto& v : m.row(r)) row.push_back(rational_json(v));
    out.push_back(std::move(row));
  }
  return out;
}

Matrix<Rational> matrix_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("matrix must be an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : j[0].size();
  Matrix<Rational> m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (j[r].size() != cols) throw std::invalid_argument("matrix rows differ in length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rational_from_json(j[r][c]);
  }
  return m;
}

Json integer_json(const Int& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

Json integers_json(const std::vector<Int>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(integer_json(x));
  return out;
}

Json float_json(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return std::stod(buf);
}

Json to_json(const DhParams& params) {
  return Json{{"p", integer_json(params.p())}, {"m", integer_json(params.m())}};
}

Json to_json(const DhTranscript& t) {
  return Json{{"params", to_json(t.params)}, {"e", integer_json(t.e)},    {"d", integer_json(t.d)},
              {"c_e", integer_json(t.c_e)},  {"c_d", integer_json(t.c_d)}, {"c_ed", integer_json(t.c_ed)}};
}

Json to_json(const IntersectionResult& r) {
  return Json{{"secret", integer_json(r.secret)},
              {"e", integer_json(r.e)},
              {"d", integer_json(r.d)},
              {"spurious_candidates", r.spurious_candidates}};
}

Json to_json(const LiftingScan& scan) {
  Json steps = Json::array();
  for (const auto& s : scan.steps)
    steps.push_back({{"q", s.q}, {"rank_a", s.rank_a}, {"rank_ab", s.rank_ab}, {"closes", s.closes}});
  return Json{{"dimension", scan.dimension}, {"alpha", rationals_json(scan.alpha)}, {"scan", steps}};
}

Json to_json(const SpectralDecomposition& dec) {
  Json eig = Json::array();
  for (std::size_t j = 0; j < dec.eigen_turns.size(); ++j)
    eig.push_back({{"turns", rational_json(dec.eigen_turns[j].turns())},
                   {"re", float_json(dec.eigenvalues[j].real())},
                   {"im", float_json(dec.eigenvalues[j].imag())}});
  Json out{{"q", dec.q}, {"eigenvalues", eig}};
  const auto idx = dec.minus_one_index();
  out["minus_one_index"] = idx ? Json(*idx) : Json(nullptr);
  return out;
}

Json to_json(const ExponentEstimate& est) {
  Json residues = Json::array();
  for (const auto& r : est.residues)
    residues.push_back({{"eigen_index", r.eigen_index},
                        {"matched_power", r.matched_power},
                        {"modulus", r.modulus},
                        {"match_error", float_json(r.match_error)}});
  return Json{{"e", integer_json(est.e)}, {"parity", to_string(est.parity)}, {"residues", residues}};
}

Json to_json(const EdmdDataset& ds) {
  return Json{{"q", ds.q}, {"n", ds.n}, {"rank_z", ds.rank_z}};
}

Json to_json(const FittedOperator& fit) {
  return Json{{"fit_kind", to_string(fit.kind)},
              {"a_hat", matrix_json(fit.a_hat)},
              {"residual_sq", rational_json(fit.residual_sq)},
              {"residual", float_json(fit.residual())}};
}

Json to_json(const OperatorComparison& cmp) {
  Json out{{"entrywise_equal", cmp.entrywise_equal}, {"prediction_equivalent", cmp.prediction_equivalent}};
  out["first_mismatch"] = cmp.first_mismatch ? Json(*cmp.first_mismatch) : Json(nullptr);
  return out;
}

Json to_json(const UnderparameterizedFit& fit) {
  return Json{{"fit", to_json(fit.fit)},
              {"horizon", fit.horizon},
              {"exact_predictions", fit.exact_predictions},
              {"max_prediction_error", rational_json(fit.max_prediction_error)}};
}

Json to_json(const LinearComplexityResult& lc) {
  return Json{{"field", lc.field.describe()},
              {"length", lc.length},
              {"connection", rationals_json(lc.connection)},
              {"convention", "s_k = sum_{i=1..L} c_i s_{k-i}"}};
}

Json to_json(const KoopmanLfsrComparison& cmp) {
  return Json{{"lfsr_length", cmp.lfsr_length},
              {"koopman_dimension", cmp.koopman_dimension},
              {"equal", cmp.equal},
              {"connection", rationals_json(cmp.connection)},
              {"connection_as_alpha", rationals_json(cmp.connection_as_alpha)}};
}

Json report_header(std::string_view command) {
  return Json{{"schema_version", kSchemaVersion}, {"command", command}};
}

}  // namespace koopdh
