#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace vchild::stats {

/// Comma-separated table with a header row. Fields may be double-quoted;
/// `""` inside quotes is a literal quote. Blank lines are skipped.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a named column. Throws InvalidInput when absent.
  std::size_t column(const std::string& name) const;
  std::vector<double> numeric_column(std::size_t index) const;
};

Table read_csv(std::istream& in);
Table read_csv(const std::filesystem::path& path);

double parse_double(const std::string& field);

}  // namespace vchild::stats
