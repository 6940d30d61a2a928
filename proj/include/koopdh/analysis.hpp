#pragma once

// Report builders behind the command-line tool. Every report is a JSON object
// carrying "schema_version" and "command"; reports that cross-check two
// routes also carry "consistent", which the tool turns into its exit code.

#include <koopdh/report.hpp>

#include <cstdint>
#include <optional>
#include <variant>

namespace koopdh {

enum class GeneratorPolicy { Smallest, All, Explicit };

struct ExperimentConfig {
  std::vector<Int> primes;
  GeneratorPolicy generators = GeneratorPolicy::Smallest;
  std::vector<Int> explicit_generators;
  /// "half" -> (p-1)/2, "full" -> p-2, or an explicit q applied to every p.
  std::variant<std::string, std::size_t> q_policy = std::string("half");
  /// "all", a sample size, or an explicit exponent list.
  std::variant<std::string, std::size_t, std::vector<Int>> exponent_sweep = std::string("all");
  std::string output_path;
  std::string output_format = "json";
  std::uint64_t seed = 0;
};

/// Validates as it parses; violations throw std::invalid_argument.
ExperimentConfig parse_config(const Json& j);
Json config_json(const ExperimentConfig& cfg);

/// Report with a run manifest and one record per (p, m), ordered by (p, m).
/// Cases are evaluated concurrently on `threads` workers (0 = hardware).
Json run_experiment(const ExperimentConfig& cfg, unsigned threads = 0);

/// One CSV row per record, with a header line.
std::string experiment_csv(const Json& report);

Json verify_theorem_report(const Int& from, const Int& to, GeneratorPolicy policy);

/// Exactly one of `c` / `e` must be set; with `e` the ciphertext is derived first.
Json recover_report(const DhParams& params, const std::optional<Int>& c, const std::optional<Int>& e,
                    bool parity_only);

Json shared_secret_report(const DhParams& params, const Int& c_e, const Int& c_d);

Json edmd_report(const DhParams& params, std::size_t q, std::size_t n);
Json edmd_data_report(const std::vector<Int>& series, std::size_t q, std::optional<std::size_t> n,
                      const std::optional<Int>& p);

Json complexity_report(const DhParams& params);
Json complexity_sequence_report(const std::vector<Rational>& terms, const std::optional<Int>& field_prime,
                                std::optional<std::size_t> expected_length);

}  // namespace koopdh
