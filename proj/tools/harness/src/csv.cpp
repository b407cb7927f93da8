#include "harness/csv.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace harness {

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::string format_number(long long value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld", value);
  return buf;
}

std::string CsvTable::to_string() const {
  std::string out;
  const auto append_row = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out.push_back(',');
      out += cells[i];
    }
    out.push_back('\n');
  };
  append_row(header);
  for (const auto& row : rows) append_row(row);
  return out;
}

void CsvTable::write(std::ostream& out) const { out << to_string(); }

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::out_of_range("CsvTable: no column named " + name);
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream stream(text);
  std::string line;
  bool saw_header = false;
  while (std::getline(stream, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      if (comma == std::string::npos) {
        cells.push_back(line.substr(start));
        break;
      }
      cells.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    if (!saw_header) {
      table.header = std::move(cells);
      saw_header = true;
    } else {
      if (cells.size() != table.header.size()) {
        throw std::runtime_error("parse_csv: ragged row: " + line);
      }
      table.rows.push_back(std::move(cells));
    }
  }
  if (!saw_header) throw std::runtime_error("parse_csv: empty document");
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open CSV file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

}  // namespace harness
