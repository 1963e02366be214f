#include "hslab/report_io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>

namespace hslab {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void KeyValueDoc::set(const std::string& section, const std::string& key,
                      std::string value) {
  for (auto& e : entries) {
    if (e.section == section && e.key == key) {
      e.value = std::move(value);
      return;
    }
  }
  entries.push_back({section, key, std::move(value)});
}

void KeyValueDoc::set_real(const std::string& section, const std::string& key,
                           double x) {
  set(section, key, format_real(x));
}

std::string KeyValueDoc::get(const std::string& section, const std::string& key,
                             const std::string& fallback) const {
  for (const auto& e : entries)
    if (e.section == section && e.key == key) return e.value;
  return fallback;
}

bool KeyValueDoc::has(const std::string& section,
                      const std::string& key) const {
  for (const auto& e : entries)
    if (e.section == section && e.key == key) return true;
  return false;
}

void write_doc(std::ostream& os, const KeyValueDoc& doc) {
  std::string current;
  bool first = true;
  for (const auto& e : doc.entries) {
    if (e.section != current || first) {
      if (!e.section.empty() && e.section != current) {
        if (!first) os << "\n";
        os << "[" << e.section << "]\n";
      }
      current = e.section;
      first = false;
    }
    os << e.key << " = " << e.value << "\n";
  }
}

KeyValueDoc parse_doc(std::istream& is) {
  KeyValueDoc doc;
  std::string line, section;
  while (std::getline(is, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[' && t.back() == ']') {
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) continue;
    doc.entries.push_back(
        {section, trim(t.substr(0, eq)), trim(t.substr(eq + 1))});
  }
  return doc;
}

void CsvTable::add_row(const std::vector<double>& values) {
  std::vector<std::string> row;
  row.reserve(values.size());
  for (double v : values) row.push_back(format_real(v));
  rows.push_back(std::move(row));
}

void write_csv(std::ostream& os, const CsvTable& table) {
  for (size_t i = 0; i < table.header.size(); ++i)
    os << (i ? "," : "") << table.header[i];
  os << "\n";
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
}

}  // namespace hslab
