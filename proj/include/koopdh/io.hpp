#pragma once

// Sequence files: CSV with one integer per line and no header, or a JSON
// array whose entries are integers, decimal strings or {"num","den"} pairs.

#include <koopdh/numeric.hpp>

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace koopdh {

/// Throws DataError naming the first offending line.
std::vector<Int> read_integer_csv(std::istream& in);
std::vector<Int> read_integer_csv(const std::filesystem::path& path);

void write_integer_csv(std::ostream& out, std::span<const Int> values);

/// Dispatches on the extension: ".json" is parsed as JSON, anything else as CSV.
std::vector<Rational> read_sequence_file(const std::filesystem::path& path);

/// Applies the KOOPDH_OUTPUT_DIR override: when set, the file name of `path`
/// is kept and its directory replaced.
std::filesystem::path resolve_output_path(const std::filesystem::path& path);

}  // namespace koopdh
