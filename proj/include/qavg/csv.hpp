#pragma once

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

namespace qavg {

/// Fixed-format float text (17 significant digits), shared by every emitter
/// so reruns produce byte-identical files.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Writes header + rows to dir/name, via a temp file and an atomic rename.
void write_csv_atomic(const std::filesystem::path& dir, const std::string& name,
                      const Table& table);

}  // namespace qavg
