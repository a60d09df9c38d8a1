#include "dqc1bench/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace dqc1bench {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::size_t CsvTable::col(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw std::invalid_argument("csv: no column named '" + name + "'");
}

namespace {
void append_line(std::string& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  out += '\n';
}
}  // namespace

std::string CsvTable::serialize() const {
  std::string out;
  append_line(out, header);
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw std::invalid_argument("csv: ragged row");
    append_line(out, row);
  }
  return out;
}

CsvTable CsvTable::parse(const std::string& text) {
  CsvTable table;
  std::size_t pos = 0;
  bool first = true;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::vector<std::string> fields;
    std::size_t fpos = 0;
    while (true) {
      std::size_t comma = line.find(',', fpos);
      if (comma == std::string::npos) {
        fields.push_back(line.substr(fpos));
        break;
      }
      fields.push_back(line.substr(fpos, comma - fpos));
      fpos = comma + 1;
    }

    if (first) {
      table.header = std::move(fields);
      first = false;
    } else {
      if (fields.size() != table.header.size())
        throw std::invalid_argument("csv: row width does not match header");
      table.rows.push_back(std::move(fields));
    }
  }
  if (first) throw std::invalid_argument("csv: empty document");
  return table;
}

double csv_to_double(const std::string& field) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0')
    throw std::invalid_argument("csv: not a number: '" + field + "'");
  return v;
}

}  // namespace dqc1bench
