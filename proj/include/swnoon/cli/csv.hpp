#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace swnoon::cli {

/// 12 significant digits, shortest form, locale independent.
std::string format_number(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<int> line_numbers;  // 1-based source line of each row

  std::optional<std::size_t> column(const std::string& name) const;
};

/// Header row mandatory. Throws UsageError naming the offending line.
CsvTable read_csv(std::istream& in, const std::string& origin);

}  // namespace swnoon::cli
