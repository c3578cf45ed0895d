#pragma once

#include <string>
#include <vector>

namespace relloc::cli {

// Shortest representation that round-trips a double exactly (17 significant
// digits); identical runs therefore produce byte-identical files.
std::string format_double(double v);

// Writes to a temporary file in the target directory, then renames over the
// destination, so readers never observe a partial file.
void atomic_write(const std::string& path, const std::string& content);

struct CsvTable {
  std::vector<std::string> comments;  // '# '-prefixed lines, prefix stripped
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::string& path);

}  // namespace relloc::cli
