#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "canondeg/arithmetic.hpp"

namespace canondeg::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

enum class Format { Json, Csv };

/// Output of one subcommand. `pass` is the conjunction of the row flags.
struct Report {
  std::string command;
  Json inputs = Json::object();
  std::vector<Json> records;
  std::vector<bool> row_pass;
  std::uint64_t seed = 0;

  void add(Json row, bool ok = true) {
    row["pass"] = ok;
    records.push_back(std::move(row));
    row_pass.push_back(ok);
  }

  bool pass() const {
    for (bool ok : row_pass) {
      if (!ok) return false;
    }
    return true;
  }
};

inline Json exact(const Rational& q) { return to_string(q); }

inline Json to_json(const Report& r) {
  Json out;
  out["command"] = r.command;
  out["inputs"] = r.inputs;
  out["records"] = r.records;
  out["pass"] = r.pass();
  out["tool_version"] = kToolVersion;
  out["seed"] = r.seed;
  return out;
}

namespace detail {

inline std::string csv_cell(const Json& v) {
  std::string text;
  if (v.is_null()) return "";
  if (v.is_string()) {
    text = v.get<std::string>();
  } else {
    // Numbers use the same shortest round-trip text as the JSON encoding.
    text = v.dump();
  }
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char ch : text) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

}  // namespace detail

/// Header comments carry the report metadata; one row per record, columns in
/// first-seen key order.
inline void write_csv(std::ostream& os, const Report& r) {
  os << "# command: " << r.command << "\n";
  os << "# inputs: " << r.inputs.dump() << "\n";
  os << "# pass: " << (r.pass() ? "true" : "false") << "\n";
  os << "# tool_version: " << kToolVersion << "\n";
  os << "# seed: " << r.seed << "\n";
  std::vector<std::string> columns;
  for (const Json& row : r.records) {
    for (const auto& [key, _] : row.items()) {
      if (std::find(columns.begin(), columns.end(), key) == columns.end()) columns.push_back(key);
    }
  }
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << "\n";
  for (const Json& row : r.records) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) os << ",";
      if (row.contains(columns[i])) os << detail::csv_cell(row[columns[i]]);
    }
    os << "\n";
  }
}

inline void write_report(std::ostream& os, const Report& r, Format format) {
  if (format == Format::Json) {
    os << to_json(r).dump(2) << "\n";
  } else {
    write_csv(os, r);
  }
}

}  // namespace canondeg::cli
