#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace sclab {

// 12-significant-digit decimal formatting, locale-independent; the one
// formatter used for every numeric CSV cell so outputs are byte-stable.
std::string csv_number(double v);

std::string csv_join(const std::vector<std::string>& cells);

/// Line-oriented CSV writer with fixed '\n' endings.
class CsvFile {
 public:
  explicit CsvFile(const std::filesystem::path& path);

  void row(const std::vector<std::string>& cells);

 private:
  std::ofstream out_;
};

}  // namespace sclab
