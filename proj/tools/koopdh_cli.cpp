// koopdh: command-line front end.
//
// Exit codes: 0 success, 2 invalid parameters, 3 malformed input data,
// 4 consistency failure (a report with "consistent": false, or a recovery
// route that disagrees with its oracle).

#include <koopdh/analysis.hpp>
#include <koopdh/io.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace koopdh;

constexpr int kExitInvalid = 2;
constexpr int kExitData = 3;
constexpr int kExitConsistency = 4;

Int parse_int(const std::string& text, const char* name) {
  Int v;
  if (text.empty() || v.set_str(text, 10) != 0)
    throw std::invalid_argument(std::string("--") + name + ": not an integer: '" + text + "'");
  return v;
}

std::size_t parse_size(const std::string& text, const char* name) {
  const Int v = parse_int(text, name);
  if (v < 0 || !v.fits_ulong_p()) throw std::invalid_argument(std::string("--") + name + " must be nonnegative");
  return v.get_ui();
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  const auto path = resolve_output_path(out);
  std::ofstream file(path);
  if (!file) throw std::invalid_argument("cannot write " + path.string());
  file << text;
}

int finish(const Json& report, const std::string& out) {
  emit(report.dump(2) + "\n", out);
  if (report.contains("consistent") && !report["consistent"].get<bool>()) {
    std::cerr << "koopdh: consistency check failed\n";
    return kExitConsistency;
  }
  return 0;
}

struct Options {
  std::string p, m, steps, x0 = "1", out;
  std::string from, to, generators = "smallest";
  std::string c, e;
  bool parity_only = false;
  std::string ce, cd;
  std::string q, n, data;
  std::string sequence, field_prime, expected_length;
  std::string config;
  unsigned threads = 0;
};

int run_simulate(const Options& o) {
  const DhParams params(parse_int(o.p, "p"), parse_int(o.m, "m"));
  const auto traj = simulate(params.m(), params, parse_int(o.x0, "x0"), parse_size(o.steps, "steps"));
  std::ostringstream csv;
  write_integer_csv(csv, traj.values);
  emit(csv.str(), o.out);
  return 0;
}

int run_verify(const Options& o) {
  GeneratorPolicy policy;
  if (o.generators == "smallest") {
    policy = GeneratorPolicy::Smallest;
  } else if (o.generators == "all") {
    policy = GeneratorPolicy::All;
  } else {
    throw std::invalid_argument("--generators must be smallest or all");
  }
  Int from, to;
  if (!o.p.empty()) {
    if (!o.from.empty() || !o.to.empty()) throw std::invalid_argument("give --p or --from/--to, not both");
    from = to = parse_int(o.p, "p");
    if (!is_prime(from)) throw std::invalid_argument("--p must be prime");
  } else {
    if (o.from.empty() || o.to.empty()) throw std::invalid_argument("give --p or both --from and --to");
    from = parse_int(o.from, "from");
    to = parse_int(o.to, "to");
  }
  return finish(verify_theorem_report(from, to, policy), o.out);
}

int run_recover(const Options& o) {
  const DhParams params(parse_int(o.p, "p"), parse_int(o.m, "m"));
  std::optional<Int> c, e;
  if (!o.c.empty()) c = parse_int(o.c, "c");
  if (!o.e.empty()) e = parse_int(o.e, "e");
  return finish(recover_report(params, c, e, o.parity_only), o.out);
}

int run_shared(const Options& o) {
  const DhParams params(parse_int(o.p, "p"), parse_int(o.m, "m"));
  return finish(shared_secret_report(params, parse_int(o.ce, "ce"), parse_int(o.cd, "cd")), o.out);
}

int run_edmd(const Options& o) {
  const std::size_t q = parse_size(o.q, "q");
  if (!o.data.empty()) {
    if (!o.m.empty()) throw std::invalid_argument("--data does not take --m");
    std::optional<std::size_t> n;
    std::optional<Int> p;
    if (!o.n.empty()) n = parse_size(o.n, "n");
    if (!o.p.empty()) {
      p = parse_int(o.p, "p");
      if (*p <= 3 || !is_prime(*p)) throw std::invalid_argument("--p must be a prime > 3");
    }
    return finish(edmd_data_report(read_integer_csv(std::filesystem::path(o.data)), q, n, p), o.out);
  }
  if (o.p.empty() || o.m.empty() || o.n.empty()) throw std::invalid_argument("give --p, --m and --n, or --data");
  const DhParams params(parse_int(o.p, "p"), parse_int(o.m, "m"));
  if (Int(static_cast<unsigned long>(q)) > params.p() - 2) throw std::invalid_argument("--q must lie in [0, p-2]");
  return finish(edmd_report(params, q, parse_size(o.n, "n")), o.out);
}

int run_complexity(const Options& o) {
  if (!o.sequence.empty()) {
    if (!o.p.empty() || !o.m.empty()) throw std::invalid_argument("give --sequence or --p/--m, not both");
    std::optional<Int> prime;
    std::optional<std::size_t> expected;
    if (!o.field_prime.empty()) {
      prime = parse_int(o.field_prime, "field-prime");
      if (!is_prime(*prime)) throw std::invalid_argument("--field-prime must be prime");
    }
    if (!o.expected_length.empty()) expected = parse_size(o.expected_length, "expected-length");
    return finish(complexity_sequence_report(read_sequence_file(o.sequence), prime, expected), o.out);
  }
  if (o.p.empty() || o.m.empty()) throw std::invalid_argument("give --p and --m, or --sequence");
  return finish(complexity_report(DhParams(parse_int(o.p, "p"), parse_int(o.m, "m"))), o.out);
}

int run_config(const Options& o) {
  std::ifstream in(o.config);
  if (!in) throw DataError("cannot open " + o.config);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& err) {
    throw DataError(o.config + ": " + err.what());
  }
  ExperimentConfig cfg;
  try {
    cfg = parse_config(doc);
  } catch (const Json::exception& err) {
    throw std::invalid_argument(o.config + ": " + err.what());
  }
  const Json report = run_experiment(cfg, o.threads);
  std::string text = cfg.output_format == "csv" ? experiment_csv(report) : report.dump(2) + "\n";
  emit(text, cfg.output_path);
  if (!report["consistent"].get<bool>()) {
    std::cerr << "koopdh: consistency check failed\n";
    return kExitConsistency;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Koopman lifting and spectral analysis of the Diffie-Hellman map x -> m x mod p"};
  app.require_subcommand(1);
  Options o;

  auto* sim = app.add_subcommand("simulate", "Write the trajectory x_k = m^k x0 mod p as CSV");
  sim->add_option("--p", o.p)->required();
  sim->add_option("--m", o.m)->required();
  sim->add_option("--steps", o.steps)->required();
  sim->add_option("--x0", o.x0, "Initial state (default 1)");
  sim->add_option("--out", o.out);

  auto* ver = app.add_subcommand("verify-theorem", "Compare the minimal lifting dimension against (p-1)/2 + 1");
  ver->add_option("--p", o.p);
  ver->add_option("--from", o.from);
  ver->add_option("--to", o.to);
  ver->add_option("--generators", o.generators, "smallest or all");
  ver->add_option("--out", o.out);

  auto* rec = app.add_subcommand("recover", "Spectral recovery of e from c = m^e mod p");
  rec->add_option("--p", o.p)->required();
  rec->add_option("--m", o.m)->required();
  auto* c_opt = rec->add_option("--c", o.c);
  auto* e_opt = rec->add_option("--e", o.e, "Self-test: derive c from e, then recover");
  c_opt->excludes(e_opt);
  rec->add_flag("--parity-only", o.parity_only);
  rec->add_option("--out", o.out);

  auto* ss = app.add_subcommand("shared-secret", "Trajectory intersection attack on a transcript");
  ss->add_option("--p", o.p)->required();
  ss->add_option("--m", o.m)->required();
  ss->add_option("--ce", o.ce)->required();
  ss->add_option("--cd", o.cd)->required();
  ss->add_option("--out", o.out);

  auto* ed = app.add_subcommand("edmd", "Least-squares Koopman fit from snapshots");
  ed->add_option("--p", o.p);
  ed->add_option("--m", o.m);
  ed->add_option("--q", o.q)->required();
  ed->add_option("--n", o.n, "Number of snapshot pairs");
  ed->add_option("--data", o.data, "CSV series, one integer per line");
  ed->add_option("--out", o.out);

  auto* lc = app.add_subcommand("complexity", "Linear complexity against the Koopman dimension");
  lc->add_option("--p", o.p);
  lc->add_option("--m", o.m);
  lc->add_option("--sequence", o.sequence, "CSV or JSON sequence file");
  lc->add_option("--field-prime", o.field_prime, "Also compute the complexity over GF(prime)");
  lc->add_option("--expected-length", o.expected_length, "Flag a discrepancy against this length");
  lc->add_option("--out", o.out);

  auto* run = app.add_subcommand("run", "Run an experiment described by a JSON config");
  run->add_option("--config", o.config)->required();
  run->add_option("--threads", o.threads, "Worker threads (0 = hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*sim) return run_simulate(o);
    if (*ver) return run_verify(o);
    if (*rec) return run_recover(o);
    if (*ss) return run_shared(o);
    if (*ed) return run_edmd(o);
    if (*lc) return run_complexity(o);
    return run_config(o);
  } catch (const DataError& err) {
    std::cerr << "koopdh: malformed data: " << err.what() << '\n';
    return kExitData;
  } catch (const ConsistencyError& err) {
    std::cerr << "koopdh: consistency failure: " << err.what() << '\n';
    return kExitConsistency;
  } catch (const std::invalid_argument& err) {
    std::cerr << "koopdh: invalid parameters: " << err.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& err) {
    std::cerr << "koopdh: " << err.what() << '\n';
    return 1;
  }
}
