#pragma once

// JSON state files.
//
//   {"dimA": 2, "dimB": 2,
//    "matrix": [[re, im], ...],        // (dimA·dimB)^2 entries, row-major
//    "metadata": {...}}                // optional
//
// A pure vector file carries "vector" (dimA·dimB entries) instead of
// "matrix". Extra named matrices ride along under "attachments" as
// {"rows": r, "cols": c, "matrix": [[re, im], ...]}. Numbers are written
// with 17 significant digits, so binary64 values round-trip exactly.

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "sepred/bipartite.hpp"

namespace sepred {

struct StateFile {
  std::variant<BipartiteOperator, PureVector> content;
  nlohmann::json metadata = nlohmann::json::object();
  std::vector<std::pair<std::string, ComplexMatrix>> attachments;

  std::size_t dim_a() const;
  std::size_t dim_b() const;
  bool is_pure() const { return std::holds_alternative<PureVector>(content); }
  /// The operator, or v v* for a pure vector.
  BipartiteOperator density() const;
};

/// Throws ParseError on malformed JSON, missing keys or length mismatch.
StateFile parse_state(std::string_view text);
std::string serialize_state(const StateFile& state);

StateFile read_state_file(const std::filesystem::path& path);
void write_state_file(const std::filesystem::path& path, const StateFile& state);

/// %.17g, with ".0" appended when the result would read back as an integer.
std::string format_double(double x);

nlohmann::json matrix_to_json(const ComplexMatrix& m);

}  // namespace sepred
