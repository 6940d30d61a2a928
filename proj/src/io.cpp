#include <koopdh/io.hpp>
#include <koopdh/report.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace koopdh {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_integer(const std::string& token, Int& out) {
  std::size_t i = (token.size() > 1 && (token[0] == '-' || token[0] == '+')) ? 1 : 0;
  if (i == token.size()) return false;
  if (!std::all_of(token.begin() + static_cast<std::ptrdiff_t>(i), token.end(),
                   [](unsigned char c) { return std::isdigit(c) != 0; }))
    return false;
  return out.set_str(token[0] == '+' ? token.substr(1) : token, 10) == 0;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return in;
}

}  // namespace

std::vector<Int> read_integer_csv(std::istream& in) {
  std::vector<Int> values;
  std::string line;
  std::size_t line_no = 0;
  std::size_t blank_run = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto token = trim(line);
    if (token.empty()) {
      ++blank_run;
      continue;
    }
    if (blank_run > 0) throw DataError("line " + std::to_string(line_no - 1) + ": blank line inside data");
    Int v;
    if (!parse_integer(token, v)) throw DataError("line " + std::to_string(line_no) + ": not an integer: '" + token + "'");
    values.push_back(std::move(v));
  }
  if (values.empty()) throw DataError("no data");
  return values;
}

std::vector<Int> read_integer_csv(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return read_integer_csv(in);
}

void write_integer_csv(std::ostream& out, std::span<const Int> values) {
  for (const auto& v : values) out << v.get_str() << '\n';
}

std::vector<Rational> read_sequence_file(const std::filesystem::path& path) {
  if (path.extension() != ".json") return to_rationals(read_integer_csv(path));
  auto in = open_or_throw(path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  const Json& arr = doc.is_object() && doc.contains("terms") ? doc["terms"] : doc;
  if (!arr.is_array() || arr.empty()) throw DataError(path.string() + ": expected a nonempty array");
  std::vector<Rational> out;
  for (const auto& item : arr) {
    try {
      out.push_back(rational_from_json(item));
    } catch (const std::exception& e) {
      throw DataError(path.string() + ": " + e.what());
    }
  }
  return out;
}

std::filesystem::path resolve_output_path(const std::filesystem::path& path) {
  const char* dir = std::getenv("KOOPDH_OUTPUT_DIR");
  if (dir == nullptr || *dir == '\0') return path;
  return std::filesystem::path(dir) / path.filename();
}

}  // namespace koopdh
