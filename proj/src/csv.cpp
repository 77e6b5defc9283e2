#include "sclab/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace sclab {

std::string csv_number(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string csv_join(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  return line;
}

CsvFile::CsvFile(const std::filesystem::path& path)
    : out_(path, std::ios::binary) {
  if (!out_) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
}

void CsvFile::row(const std::vector<std::string>& cells) {
  out_ << csv_join(cells) << '\n';
  if (!out_) throw std::runtime_error("CSV write failed");
}

}  // namespace sclab
