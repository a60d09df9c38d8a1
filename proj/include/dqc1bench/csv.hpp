#pragma once

#include <string>
#include <vector>

namespace dqc1bench {

// Shortest round-trip-ish decimal rendering ("%.12g", C locale) so CSV bytes
// are identical across runs and platforms.
std::string fmt_double(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index of `name`; throws if absent.
  std::size_t col(const std::string& name) const;

  // Header line plus rows, comma separated, '\n' line endings, no trailing
  // blank line beyond the final newline.
  std::string serialize() const;

  static CsvTable parse(const std::string& text);
};

double csv_to_double(const std::string& field);

}  // namespace dqc1bench
