#include <koopdh/analysis.hpp>
#include <koopdh/io.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace koopdh {

namespace {

std::size_t small(const Int& v) {
  if (v < 0 || !v.fits_ulong_p()) throw std::invalid_argument("value out of range: " + to_string(v));
  return static_cast<std::size_t>(v.get_ui());
}

Int big(std::size_t v) { return Int(static_cast<unsigned long>(v)); }

Int int_from_json(const Json& j, const char* what) {
  if (j.is_number_integer()) return Int(j.dump());
  if (j.is_string()) {
    Int v;
    if (v.set_str(j.get<std::string>(), 10) == 0) return v;
  }
  throw std::invalid_argument(std::string(what) + ": expected an integer, got " + j.dump());
}

std::vector<Int> generators_for(const Int& p, const ExperimentConfig& cfg) {
  switch (cfg.generators) {
    case GeneratorPolicy::Smallest: return {find_primitive_root(p)};
    case GeneratorPolicy::All: return all_primitive_roots(p);
    case GeneratorPolicy::Explicit: {
      std::vector<Int> out;
      for (const auto& m : cfg.explicit_generators)
        if (m >= 2 && m < p && is_primitive_root(m, p)) out.push_back(m);
      if (out.empty())
        throw std::invalid_argument("no listed generator is a primitive root mod " + to_string(p));
      return out;
    }
  }
  return {};
}

std::size_t q_for(const Int& p, const ExperimentConfig& cfg) {
  if (const auto* explicit_q = std::get_if<std::size_t>(&cfg.q_policy)) {
    if (big(*explicit_q) > p - 2)
      throw std::invalid_argument("q = " + std::to_string(*explicit_q) + " exceeds p-2 for p = " + to_string(p));
    return *explicit_q;
  }
  return std::get<std::string>(cfg.q_policy) == "full" ? small(p - 2) : small((p - 1) / 2);
}

// Partial Fisher-Yates on raw mt19937_64 output, so the draw does not depend
// on the standard library's distribution implementations.
std::vector<Int> sample_exponents(const Int& p, const Int& m, std::size_t k, std::uint64_t seed) {
  const std::size_t n = small(p - 1);
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i + 1;
  std::mt19937_64 rng(seed ^ (small(p) * 0x9E3779B97F4A7C15ULL) ^ (small(m) << 32));
  k = std::min(k, n);
  for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng() % (n - i)]);
  std::vector<Int> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(big(pool[i]));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Int> exponents_for(const DhParams& params, const ExperimentConfig& cfg) {
  const auto& sweep = cfg.exponent_sweep;
  if (const auto* k = std::get_if<std::size_t>(&sweep)) return sample_exponents(params.p(), params.m(), *k, cfg.seed);
  if (const auto* list = std::get_if<std::vector<Int>>(&sweep)) {
    std::vector<Int> out;
    for (const auto& e : *list)
      if (e >= 1 && e < params.p()) out.push_back(e);
    std::sort(out.begin(), out.end());
    return out;
  }
  std::vector<Int> all;
  for (Int e = 1; e < params.p(); ++e) all.push_back(e);
  return all;
}

Json recovery_block(const DhParams& params, std::size_t q, const std::vector<Int>& exponents) {
  const Int qt = params.half_period();
  Json outcomes = Json::array();
  bool all_match = true;
  std::string method;
  if (big(q) == qt) {
    method = "spectral";
    const auto dec = eigen_canonical(params.p(), q);
    const auto z0 = lift_ciphertext(1, params, q);
    for (const auto& e : exponents) {
      const Int c = mod_pow(params.m(), e, params.p());
      Json row{{"e", integer_json(e)}, {"c", integer_json(c)}};
      try {
        const auto est = recover_exponent(lift_ciphertext(c, params, q), z0, dec, params.p());
        const bool match = est.e == discrete_log_bruteforce(c, params);
        const bool parity_ok = est.parity == Parity::Unavailable ||
                               (est.parity == Parity::Even) == (mpz_even_p(e.get_mpz_t()) != 0);
        row["recovered"] = integer_json(est.e);
        row["parity"] = to_string(est.parity);
        row["oracle_match"] = match && parity_ok;
        all_match = all_match && match && parity_ok;
      } catch (const ConsistencyError& err) {
        row["recovered"] = nullptr;
        row["error"] = err.what();
        row["oracle_match"] = false;
        all_match = false;
      }
      outcomes.push_back(std::move(row));
    }
  } else if (big(q) >= params.p() - 2) {
    method = "index_lookup";
    for (const auto& e : exponents) {
      const Int c = mod_pow(params.m(), e, params.p());
      const Int found = index_lookup_attack(c, params);
      const bool match = found == discrete_log_bruteforce(c, params);
      all_match = all_match && match;
      outcomes.push_back({{"e", integer_json(e)},
                          {"c", integer_json(c)},
                          {"recovered", integer_json(found)},
                          {"oracle_match", match}});
    }
  } else {
    method = "unavailable";
  }
  return Json{{"method", method}, {"outcomes", outcomes}, {"all_match", all_match}};
}

Json case_record(const DhParams& params, const ExperimentConfig& cfg) {
  const Int& p = params.p();
  const std::size_t q = q_for(p, cfg);
  const std::size_t qt = small(params.half_period());
  const std::size_t period = small(params.period());

  const auto scan = scan_lifting_dimension(params);
  Json rec{{"p", integer_json(p)}, {"m", integer_json(params.m())}, {"q", q}, {"q_tilde", qt}};
  rec["minimal_dimension"] = scan.dimension;
  rec["expected_dimension"] = qt + 1;
  rec["theorem_match"] = scan.dimension == qt + 1;

  const auto traj = simulate(params.m(), params, 1, 2 * period + q);
  if (q >= qt) {
    const auto alpha = canonical_alpha(p, q);
    rec["alpha"] = rationals_json(alpha);
    rec["closing_verified"] = verify_closing(traj, alpha, 2);
  } else {
    rec["alpha"] = nullptr;
    rec["closing_verified"] = false;
  }
  rec["eigenvalues"] = q == qt ? to_json(eigen_canonical(p, q)) : Json(nullptr);
  rec["recovery"] = recovery_block(params, q, exponents_for(params, cfg));

  const std::size_t n = period;
  const auto ds = build_dataset(traj, q, n);
  Json edmd{{"n", n}, {"rank_z", ds.rank_z}, {"assumption", check_assumption(ds, p)}};
  if (q >= qt) {
    const auto fit = edmd_fit(ds);
    const auto cmp = compare_operators(fit, CompanionSystem(q, canonical_alpha(p, q)), traj, 2 * period);
    edmd["fit_kind"] = to_string(fit.kind);
    edmd["residual_sq"] = rational_json(fit.residual_sq);
    edmd["entrywise_equal"] = cmp.entrywise_equal;
    edmd["prediction_equivalent"] = cmp.prediction_equivalent;
  } else {
    const auto under = edmd_underparameterized(traj, q, n);
    edmd["fit_kind"] = to_string(under.fit.kind);
    edmd["residual_sq"] = rational_json(under.fit.residual_sq);
    edmd["under_parameterized"] = true;
    edmd["exact_predictions"] = under.exact_predictions;
    edmd["horizon"] = under.horizon;
  }
  rec["edmd"] = std::move(edmd);
  rec["linear_complexity"] = to_json(compare_koopman_vs_lfsr(params));
  return rec;
}

}  // namespace

ExperimentConfig parse_config(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  ExperimentConfig cfg;

  const Json& primes = j.at("primes");
  if (primes.is_array()) {
    for (const auto& v : primes) cfg.primes.push_back(int_from_json(v, "primes"));
  } else if (primes.is_object()) {
    const Int from = int_from_json(primes.at("from"), "primes.from");
    const Int to = int_from_json(primes.at("to"), "primes.to");
    for (Int v = std::max(from, Int(5)); v <= to; ++v)
      if (is_prime(v)) cfg.primes.push_back(v);
  } else {
    throw std::invalid_argument("primes: expected a list or {\"from\", \"to\"}");
  }
  if (cfg.primes.empty()) throw std::invalid_argument("primes: no primes selected");
  for (const auto& p : cfg.primes)
    if (p <= 3 || !is_prime(p)) throw std::invalid_argument("primes: " + to_string(p) + " is not an odd prime > 3");
  std::sort(cfg.primes.begin(), cfg.primes.end());
  cfg.primes.erase(std::unique(cfg.primes.begin(), cfg.primes.end()), cfg.primes.end());

  if (j.contains("generators")) {
    const Json& g = j["generators"];
    if (g == "smallest") {
      cfg.generators = GeneratorPolicy::Smallest;
    } else if (g == "all") {
      cfg.generators = GeneratorPolicy::All;
    } else if (g.is_array()) {
      cfg.generators = GeneratorPolicy::Explicit;
      for (const auto& v : g) cfg.explicit_generators.push_back(int_from_json(v, "generators"));
    } else {
      throw std::invalid_argument("generators: expected \"smallest\", \"all\" or a list");
    }
  }

  if (j.contains("q_policy")) {
    const Json& q = j["q_policy"];
    if (q == "half" || q == "full") {
      cfg.q_policy = q.get<std::string>();
    } else if (q.is_number_unsigned()) {
      cfg.q_policy = q.get<std::size_t>();
    } else {
      throw std::invalid_argument("q_policy: expected \"half\", \"full\" or a nonnegative integer");
    }
  }
  if (const auto* explicit_q = std::get_if<std::size_t>(&cfg.q_policy))
    for (const auto& p : cfg.primes)
      if (big(*explicit_q) > p - 2)
        throw std::invalid_argument("q_policy: q exceeds p-2 for p = " + to_string(p));

  if (j.contains("exponent_sweep")) {
    const Json& s = j["exponent_sweep"];
    if (s == "all") {
      cfg.exponent_sweep = std::string("all");
    } else if (s.is_object() && s.contains("sample")) {
      cfg.exponent_sweep = s["sample"].get<std::size_t>();
    } else if (s.is_array()) {
      std::vector<Int> list;
      for (const auto& v : s) list.push_back(int_from_json(v, "exponent_sweep"));
      cfg.exponent_sweep = std::move(list);
    } else {
      throw std::invalid_argument("exponent_sweep: expected \"all\", {\"sample\": k} or a list");
    }
  }

  if (j.contains("output")) {
    const Json& o = j["output"];
    cfg.output_path = o.value("path", "");
    cfg.output_format = o.value("format", "json");
    if (cfg.output_format != "json" && cfg.output_format != "csv")
      throw std::invalid_argument("output.format must be json or csv");
  }
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  return cfg;
}

Json config_json(const ExperimentConfig& cfg) {
  Json out;
  out["primes"] = integers_json(cfg.primes);
  switch (cfg.generators) {
    case GeneratorPolicy::Smallest: out["generators"] = "smallest"; break;
    case GeneratorPolicy::All: out["generators"] = "all"; break;
    case GeneratorPolicy::Explicit: out["generators"] = integers_json(cfg.explicit_generators); break;
  }
  std::visit([&](const auto& v) { out["q_policy"] = v; }, cfg.q_policy);
  if (const auto* s = std::get_if<std::string>(&cfg.exponent_sweep)) out["exponent_sweep"] = *s;
  if (const auto* k = std::get_if<std::size_t>(&cfg.exponent_sweep)) out["exponent_sweep"] = {{"sample", *k}};
  if (const auto* l = std::get_if<std::vector<Int>>(&cfg.exponent_sweep)) out["exponent_sweep"] = integers_json(*l);
  out["output"] = {{"path", cfg.output_path}, {"format", cfg.output_format}};
  out["seed"] = cfg.seed;
  return out;
}

Json run_experiment(const ExperimentConfig& cfg, unsigned threads) {
  const auto start = std::chrono::steady_clock::now();

  std::vector<DhParams> cases;
  for (const auto& p : cfg.primes)
    for (const auto& m : generators_for(p, cfg)) cases.emplace_back(p, m);

  std::vector<Json> records(cases.size());
  std::vector<std::exception_ptr> errors(cases.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cases.size(); i = next++) {
      try {
        records[i] = case_record(cases[i], cfg);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, cases.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);

  bool consistent = true;
  for (const auto& r : records)
    consistent = consistent && r["theorem_match"].get<bool>() && r["recovery"]["all_match"].get<bool>() &&
                 r["linear_complexity"]["equal"].get<bool>();

  Json report = report_header("run");
  report["consistent"] = consistent;
  report["records"] = records;
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  report["manifest"] = {{"tool", "koopdh"},
                        {"tool_version", kToolVersion},
                        {"config", config_json(cfg)},
                        {"cases", cases.size()},
                        {"wall_clock_seconds", float_json(elapsed.count())}};
  return report;
}

std::string experiment_csv(const Json& report) {
  std::ostringstream out;
  out << "p,m,q,minimal_dimension,expected_dimension,theorem_match,closing_verified,recovery_method,"
         "recovery_all_match,rank_z,residual_zero,entrywise_equal,prediction_equivalent,lfsr_length,"
         "koopman_dimension,lfsr_equal\n";
  auto flag = [](const Json& j) { return j.is_boolean() ? (j.get<bool>() ? "true" : "false") : ""; };
  for (const auto& r : report.at("records")) {
    const auto& edmd = r["edmd"];
    const bool zero = edmd["residual_sq"]["num"] == "0";
    out << r["p"].dump() << ',' << r["m"].dump() << ',' << r["q"].dump() << ',' << r["minimal_dimension"].dump()
        << ',' << r["expected_dimension"].dump() << ',' << flag(r["theorem_match"]) << ','
        << flag(r["closing_verified"]) << ',' << r["recovery"]["method"].get<std::string>() << ','
        << flag(r["recovery"]["all_match"]) << ',' << edmd["rank_z"].dump() << ',' << (zero ? "true" : "false")
        << ',' << flag(edmd.value("entrywise_equal", Json())) << ','
        << flag(edmd.value("prediction_equivalent", Json())) << ','
        << r["linear_complexity"]["lfsr_length"].dump() << ',' << r["linear_complexity"]["koopman_dimension"].dump()
        << ',' << flag(r["linear_complexity"]["equal"]) << '\n';
  }
  return out.str();
}

Json verify_theorem_report(const Int& from, const Int& to, GeneratorPolicy policy) {
  if (from > to) throw std::invalid_argument("verify-theorem: empty range");
  if (policy == GeneratorPolicy::Explicit)
    throw std::invalid_argument("verify-theorem: generator policy must be smallest or all");
  Json rows = Json::array();
  Json skipped = Json::array();
  bool all = true;
  for (Int p = std::max(from, Int(2)); p <= to; ++p) {
    if (!is_prime(p)) continue;
    if (p <= 3) {
      skipped.push_back({{"p", integer_json(p)}, {"note", "the minimal-dimension result requires p > 3"}});
      continue;
    }
    const auto gens = policy == GeneratorPolicy::All ? all_primitive_roots(p) : std::vector<Int>{find_primitive_root(p)};
    for (const auto& m : gens) {
      const std::size_t dim = minimal_lifting_dimension(DhParams(p, m));
      const std::size_t expected = small((p - 1) / 2) + 1;
      all = all && dim == expected;
      rows.push_back({{"p", integer_json(p)},
                      {"m", integer_json(m)},
                      {"minimal_dimension", dim},
                      {"expected_dimension", expected},
                      {"match", dim == expected}});
    }
  }
  Json report = report_header("verify-theorem");
  report["rows"] = rows;
  report["skipped"] = skipped;
  report["consistent"] = all;
  return report;
}

Json recover_report(const DhParams& params, const std::optional<Int>& c, const std::optional<Int>& e,
                    bool parity_only) {
  if (c.has_value() == e.has_value()) throw std::invalid_argument("recover: give exactly one of c or e");
  const Int& p = params.p();
  if (e && (*e < 1 || *e >= p)) throw std::invalid_argument("recover: e must lie in [1, p-1]");
  const Int cipher = c ? *c : mod_pow(params.m(), *e, p);
  if (cipher < 1 || cipher >= p) throw std::invalid_argument("recover: c must lie in [1, p-1]");

  const std::size_t q = small(params.half_period());
  const auto dec = eigen_canonical(p, q);
  const auto z0 = lift_ciphertext(1, params, q);
  const auto ze = lift_ciphertext(cipher, params, q);
  const Int oracle = discrete_log_bruteforce(cipher, params);
  const bool oracle_even = mpz_even_p(oracle.get_mpz_t()) != 0;

  Json report = report_header("recover");
  report["params"] = to_json(params);
  report["q"] = q;
  report["c"] = integer_json(cipher);
  report["oracle"] = integer_json(oracle);
  bool consistent = true;
  Parity par;
  if (parity_only) {
    par = parity(ze, z0, dec);
  } else {
    const auto est = recover_exponent(ze, z0, dec, p);
    par = est.parity;
    report["e"] = integer_json(est.e);
    report["residues"] = to_json(est)["residues"];
    report["oracle_match"] = est.e == oracle;
    consistent = est.e == oracle;
    if (e) {
      report["self_test_match"] = est.e == *e;
      consistent = consistent && est.e == *e;
    }
  }
  report["parity"] = to_string(par);
  if (par != Parity::Unavailable) {
    const bool parity_ok = (par == Parity::Even) == oracle_even;
    report["parity_match"] = parity_ok;
    consistent = consistent && parity_ok;
  }
  report["consistent"] = consistent;
  return report;
}

Json shared_secret_report(const DhParams& params, const Int& c_e, const Int& c_d) {
  const auto res = shared_secret_intersection(c_e, c_d, params);
  Json report = report_header("shared-secret");
  report["params"] = to_json(params);
  report["c_e"] = integer_json(c_e);
  report["c_d"] = integer_json(c_d);
  report["result"] = to_json(res);
  const bool ok = mod_pow(c_d, res.e, params.p()) == res.secret && mod_pow(c_e, res.d, params.p()) == res.secret;
  report["consistent"] = ok;
  return report;
}

Json edmd_report(const DhParams& params, std::size_t q, std::size_t n) {
  const Int& p = params.p();
  const std::size_t qt = small(params.half_period());
  const std::size_t period = small(params.period());
  const auto traj = simulate(params.m(), params, 1, n + q);
  const auto ds = build_dataset(traj, q, n);

  Json report = report_header("edmd");
  report["params"] = to_json(params);
  report["dataset"] = to_json(ds);
  report["q_tilde"] = qt;
  report["assumption"] = check_assumption(ds, p);
  bool consistent = true;
  if (q >= qt) {
    const auto fit = edmd_fit(ds);
    const auto cmp = compare_operators(fit, CompanionSystem(q, canonical_alpha(p, q)), traj, 2 * period);
    report["fit"] = to_json(fit);
    report["comparison"] = to_json(cmp);
    report["under_parameterized"] = false;
    if (check_assumption(ds, p)) {
      consistent = ds.rank_z == qt + 1 && fit.residual_sq == 0 && cmp.prediction_equivalent;
      if (q == qt) consistent = consistent && cmp.entrywise_equal;
    }
  } else {
    const auto under = edmd_underparameterized(traj, q, n);
    report["fit"] = to_json(under.fit);
    report["under_parameterized"] = true;
    report["prediction"] = {{"horizon", under.horizon},
                            {"exact_predictions", under.exact_predictions},
                            {"max_prediction_error", rational_json(under.max_prediction_error)}};
    consistent = under.fit.residual_sq > 0;
  }
  report["consistent"] = consistent;
  return report;
}

Json edmd_data_report(const std::vector<Int>& series, std::size_t q, std::optional<std::size_t> n,
                      const std::optional<Int>& p) {
  if (series.size() < q + 2)
    throw DataError("edmd: " + std::to_string(series.size()) + " samples cannot form a pair at q = " +
                    std::to_string(q));
  const std::size_t pairs = n.value_or(series.size() - q - 1);
  if (pairs + q + 1 > series.size())
    throw DataError("edmd: insufficient data for " + std::to_string(pairs) + " pairs at q = " + std::to_string(q));
  const auto ds = build_dataset(std::span<const Int>(series), q, pairs);
  const auto fit = edmd_fit(ds);
  Json report = report_header("edmd");
  report["source"] = "data";
  report["dataset"] = to_json(ds);
  report["fit"] = to_json(fit);
  if (p) {
    report["q_tilde"] = integer_json((*p - 1) / 2);
    report["assumption"] = check_assumption(ds, *p);
    report["under_parameterized"] = big(q) < (*p - 1) / 2;
  }
  report["consistent"] = true;
  return report;
}

Json complexity_report(const DhParams& params) {
  const auto cmp = compare_koopman_vs_lfsr(params);
  Json report = report_header("complexity");
  report["params"] = to_json(params);
  report["field"] = "rational";
  report["lfsr"] = cmp.lfsr_length;
  report["koopman"] = cmp.koopman_dimension;
  report["comparison"] = to_json(cmp);
  report["consistent"] = cmp.equal;
  return report;
}

Json complexity_sequence_report(const std::vector<Rational>& terms, const std::optional<Int>& field_prime,
                                std::optional<std::size_t> expected_length) {
  constexpr std::size_t kBruteForceBound = 12;
  const auto seq = SequenceSample::rational(terms);
  const auto lc = berlekamp_massey(seq);
  Json report = report_header("complexity");
  report["terms"] = terms.size();
  report["field"] = "rational";
  report["lfsr"] = lc.length;
  report["result"] = to_json(lc);

  bool consistent = true;
  if (lc.length <= kBruteForceBound) {
    const auto oracle = bruteforce_min_lfsr(seq, kBruteForceBound);
    const bool agree = oracle && oracle->length == lc.length;
    report["bruteforce_agrees"] = agree;
    consistent = agree;
  }
  if (field_prime) {
    std::vector<Int> ints;
    for (const auto& t : terms) {
      if (t.get_den() != 1) throw DataError("complexity: prime-field analysis needs integer terms");
      ints.push_back(t.get_num());
    }
    report["prime_field"] = to_json(berlekamp_massey(SequenceSample::prime_field(ints, *field_prime)));
  }
  if (expected_length) {
    report["expected_length"] = *expected_length;
    report["matches_expected"] = lc.length == *expected_length;
    if (lc.length != *expected_length)
      report["discrepancy_note"] = "computed rational-field linear complexity " + std::to_string(lc.length) +
                                   " differs from the expected length " + std::to_string(*expected_length) +
                                   "; connection listed in result";
  }
  report["consistent"] = consistent;
  return report;
}

}  // namespace koopdh
