#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

// Rows of named cells rendered as CSV or as a JSON array of objects.
// Numbers are kept as literal text so big integers never pass through a double.
struct Cell {
  std::string text;
  bool number = false;
};

inline Cell str(std::string s) { return {std::move(s), false}; }
inline Cell num(std::string s) { return {std::move(s), true}; }

using Row = std::vector<std::pair<std::string, Cell>>;

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string json_cell(const Cell& c) {
  if (c.number && !c.text.empty()) return c.text;
  if (c.number) return "null";
  return nlohmann::json(c.text).dump();
}

inline std::string json_object(const Row& row) {
  std::string out = "{";
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (k) out += ",";
    out += nlohmann::json(row[k].first).dump() + ":" + json_cell(row[k].second);
  }
  return out + "}";
}

inline void write_csv(std::ostream& os, const std::vector<Row>& rows, const std::vector<std::string>& header) {
  for (std::size_t k = 0; k < header.size(); ++k) os << (k ? "," : "") << csv_field(header[k]);
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << csv_field(row[k].second.text);
    os << '\n';
  }
}

inline void write_json(std::ostream& os, const std::vector<Row>& rows) {
  os << "[";
  for (std::size_t k = 0; k < rows.size(); ++k) os << (k ? ",\n " : "") << json_object(rows[k]);
  os << "]\n";
}
