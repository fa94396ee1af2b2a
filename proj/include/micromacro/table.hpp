#pragma once

// Flat tables written as CSV or JSON records.
//
// Numbers are formatted with 12 significant digits; NaN cells are written
// empty (CSV) or null (JSON). The JSON numbers are the CSV text parsed back,
// so both formats carry the same values.

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace mm {

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

enum class OutputFormat { Csv, Json };

std::string format_number(double v);
std::string cell_text(const Cell& c);

void write_csv(const Table& t, std::ostream& os);
void write_json(const Table& t, std::ostream& os);
void write_table(const Table& t, OutputFormat format, std::ostream& os);

/// Writes to `path`, or to stdout when path is empty. Throws Io on failure.
void write_table_file(const Table& t, OutputFormat format, const std::string& path);

}  // namespace mm
