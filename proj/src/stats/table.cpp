#include "vchild/stats/table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "vchild/error.hpp"
#include "vchild/text.hpp"

namespace vchild::stats {

namespace {

std::vector<std::string> split_row(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back(text::trim(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  if (quoted) throw Error(Errc::InvalidInput, "line " + std::to_string(line_no) + ": unterminated quote");
  fields.emplace_back(text::trim(field));
  return fields;
}

}  // namespace

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw Error(Errc::InvalidInput, "no column named '" + name + "'");
}

std::vector<double> Table::numeric_column(std::size_t index) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(parse_double(row.at(index)));
  return out;
}

double parse_double(const std::string& field) {
  double v = 0.0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw Error(Errc::InvalidInput, "not a number: '" + field + "'");
  }
  return v;
}

Table read_csv(std::istream& in) {
  Table t;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    auto fields = split_row(line, line_no);
    if (t.header.empty()) {
      t.header = std::move(fields);
      continue;
    }
    if (fields.size() != t.header.size()) {
      throw Error(Errc::InvalidInput, "line " + std::to_string(line_no) + ": expected " +
                                          std::to_string(t.header.size()) + " fields, got " +
                                          std::to_string(fields.size()));
    }
    t.rows.push_back(std::move(fields));
  }
  if (t.header.empty()) throw Error(Errc::InvalidInput, "empty table");
  return t;
}

Table read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidInput, "cannot open " + path.string());
  return read_csv(in);
}

}  // namespace vchild::stats
