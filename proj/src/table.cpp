#include "micromacro/table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "micromacro/errors.hpp"

namespace mm {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw Error(ErrorKind::InvalidArgument, "row width does not match header");
  rows.push_back(std::move(row));
}

std::string format_number(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << '\n';
  }
}

void write_json(const Table& t, std::ostream& os) {
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json rec = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Cell& c = row[i];
      if (const auto* d = std::get_if<double>(&c)) {
        const std::string text = format_number(*d);
        if (text.empty()) {
          rec[t.columns[i]] = nullptr;
        } else {
          rec[t.columns[i]] = std::stod(text);
        }
      } else if (const auto* n = std::get_if<long long>(&c)) {
        rec[t.columns[i]] = *n;
      } else {
        rec[t.columns[i]] = std::get<std::string>(c);
      }
    }
    records.push_back(std::move(rec));
  }
  os << records.dump(2) << '\n';
}

void write_table(const Table& t, OutputFormat format, std::ostream& os) {
  if (format == OutputFormat::Csv) {
    write_csv(t, os);
  } else {
    write_json(t, os);
  }
}

void write_table_file(const Table& t, OutputFormat format, const std::string& path) {
  if (path.empty()) {
    write_table(t, format, std::cout);
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
  write_table(t, format, os);
  os.flush();
  if (!os) throw Error(ErrorKind::Io, "failed writing '" + path + "'");
}

}  // namespace mm
