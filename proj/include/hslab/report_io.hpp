#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hslab {

/// Formats with 17 significant digits so reports are diff-stable.
std::string format_real(double x);

/// Ordered key = value store with bracketed section headers. Used both
/// for run configs (parse -> serialize round-trips) and for reports.
struct KeyValueDoc {
  struct Entry {
    std::string section;  // empty for the preamble
    std::string key;
    std::string value;
  };
  std::vector<Entry> entries;

  void set(const std::string& section, const std::string& key,
           std::string value);
  void set_real(const std::string& section, const std::string& key, double x);
  // returns fallback when the key is absent
  std::string get(const std::string& section, const std::string& key,
                  const std::string& fallback = "") const;
  bool has(const std::string& section, const std::string& key) const;
};

void write_doc(std::ostream& os, const KeyValueDoc& doc);
KeyValueDoc parse_doc(std::istream& is);

/// Rectangular table emitted as CSV (comma separator, LF endings).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(const std::vector<double>& values);
};

void write_csv(std::ostream& os, const CsvTable& table);

}  // namespace hslab
