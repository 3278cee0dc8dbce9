#include "sepred/state_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sepred/error.hpp"

namespace sepred {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

std::size_t positive_dim(const json& j, const char* key) {
  if (!j.contains(key)) parse_fail(std::string("missing key '") + key + "'");
  const json& v = j.at(key);
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0) {
    parse_fail(std::string("'") + key + "' must be a positive integer");
  }
  return v.get<std::size_t>();
}

std::vector<cplx> parse_entries(const json& arr, std::size_t expected, const char* key) {
  if (!arr.is_array()) parse_fail(std::string("'") + key + "' must be an array");
  if (arr.size() != expected) {
    parse_fail(std::string("'") + key + "' has " + std::to_string(arr.size()) +
               " entries, expected " + std::to_string(expected));
  }
  std::vector<cplx> out;
  out.reserve(expected);
  for (const json& e : arr) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      parse_fail(std::string("'") + key + "' entries must be [re, im] number pairs");
    }
    out.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return out;
}

void write_entries(std::ostream& os, std::span<const cplx> entries) {
  os << '[';
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) os << ", ";
    const cplx x = entries[i];
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
      throw Error(ErrorKind::IoError, "cannot serialize a non-finite entry");
    }
    os << '[' << format_double(x.real()) << ", " << format_double(x.imag()) << ']';
  }
  os << ']';
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

json matrix_to_json(const ComplexMatrix& m) {
  json arr = json::array();
  for (const cplx& x : m.entries()) arr.push_back({x.real(), x.imag()});
  return arr;
}

std::size_t StateFile::dim_a() const {
  return std::visit([](const auto& c) -> std::size_t {
    if constexpr (std::is_same_v<std::decay_t<decltype(c)>, PureVector>) return c.dim_a;
    else return c.dim_a();
  }, content);
}

std::size_t StateFile::dim_b() const {
  return std::visit([](const auto& c) -> std::size_t {
    if constexpr (std::is_same_v<std::decay_t<decltype(c)>, PureVector>) return c.dim_b;
    else return c.dim_b();
  }, content);
}

BipartiteOperator StateFile::density() const {
  if (const auto* v = std::get_if<PureVector>(&content)) return v->projector();
  return std::get<BipartiteOperator>(content);
}

StateFile parse_state(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    parse_fail(e.what());
  }
  if (!j.is_object()) parse_fail("state file must be a JSON object");
  const std::size_t da = positive_dim(j, "dimA");
  const std::size_t db = positive_dim(j, "dimB");
  const std::size_t side = da * db;

  StateFile out{BipartiteOperator::identity(1, 1)};
  const bool has_matrix = j.contains("matrix");
  const bool has_vector = j.contains("vector");
  if (has_matrix == has_vector) parse_fail("exactly one of 'matrix' or 'vector' is required");
  if (has_matrix) {
    out.content =
        BipartiteOperator(da, db, ComplexMatrix(side, side, parse_entries(j["matrix"], side * side, "matrix")));
  } else {
    out.content = PureVector(da, db, parse_entries(j["vector"], side, "vector"));
  }
  if (j.contains("metadata")) {
    if (!j["metadata"].is_object()) parse_fail("'metadata' must be an object");
    out.metadata = j["metadata"];
  }
  if (j.contains("attachments")) {
    const json& att = j["attachments"];
    if (!att.is_object()) parse_fail("'attachments' must be an object");
    for (const auto& [name, body] : att.items()) {
      if (!body.is_object()) parse_fail("attachment '" + name + "' must be an object");
      const std::size_t rows = positive_dim(body, "rows");
      const std::size_t cols = positive_dim(body, "cols");
      if (!body.contains("matrix")) parse_fail("attachment '" + name + "' lacks 'matrix'");
      out.attachments.emplace_back(
          name, ComplexMatrix(rows, cols, parse_entries(body["matrix"], rows * cols, "matrix")));
    }
  }
  return out;
}

std::string serialize_state(const StateFile& state) {
  std::ostringstream os;
  os << "{\n  \"dimA\": " << state.dim_a() << ",\n  \"dimB\": " << state.dim_b() << ",\n";
  if (const auto* v = std::get_if<PureVector>(&state.content)) {
    os << "  \"vector\": ";
    write_entries(os, v->vec);
  } else {
    os << "  \"matrix\": ";
    write_entries(os, std::get<BipartiteOperator>(state.content).matrix().entries());
  }
  if (!state.attachments.empty()) {
    os << ",\n  \"attachments\": {";
    for (std::size_t i = 0; i < state.attachments.size(); ++i) {
      const auto& [name, m] = state.attachments[i];
      os << (i ? ",\n" : "\n") << "    " << json(name).dump() << ": {\"rows\": " << m.rows()
         << ", \"cols\": " << m.cols() << ", \"matrix\": ";
      write_entries(os, m.entries());
      os << '}';
    }
    os << "\n  }";
  }
  if (!state.metadata.empty()) os << ",\n  \"metadata\": " << state.metadata.dump();
  os << "\n}\n";
  return os.str();
}

StateFile read_state_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_state(buf.str());
}

void write_state_file(const std::filesystem::path& path, const StateFile& state) {
  const std::string text = serialize_state(state);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  out << text;
}

}  // namespace sepred
