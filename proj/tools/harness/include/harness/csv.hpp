#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace harness {

/** Formats a double with 6 significant digits (the CSV cell convention used
 *  by every generator, so outputs are diff-able and platform-stable). */
std::string format_number(double value);

/** Formats an integer cell. */
std::string format_number(long long value);

/** A simple in-memory CSV document: a header row plus data rows of
 *  already-formatted cells. */
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /** Serializes with comma separators and trailing newline per row. Cells
   *  must not contain commas, quotes, or newlines; this writer never quotes. */
  std::string to_string() const;
  void write(std::ostream& out) const;

  /** Column index by name; throws std::out_of_range for unknown names. */
  std::size_t column(const std::string& name) const;
};

/** Parses CSV text produced by CsvTable (no quoting, comma separators).
 *  Blank trailing lines are ignored. Throws std::runtime_error on ragged
 *  rows. */
CsvTable parse_csv(const std::string& text);

/** Reads and parses a CSV file; throws std::runtime_error if unreadable. */
CsvTable read_csv_file(const std::string& path);

}  // namespace harness
