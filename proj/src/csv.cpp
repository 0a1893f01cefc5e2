#include "qavg/csv.hpp"

#include <fstream>

#include "qavg/errors.hpp"

namespace qavg {

void write_csv_atomic(const std::filesystem::path& dir, const std::string& name,
                      const Table& table) {
  std::filesystem::create_directories(dir);
  const auto tmp = dir / (name + ".tmp");
  const auto dst = dir / name;
  {
    std::ofstream os(tmp, std::ios::trunc);
    if (!os) throw ConfigError("cannot open output file " + tmp.string());
    for (std::size_t i = 0; i < table.header.size(); ++i) {
      if (i) os << ',';
      os << table.header[i];
    }
    os << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) os << ',';
        os << row[i];
      }
      os << '\n';
    }
    if (!os.good()) throw ConfigError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, dst);
}

}  // namespace qavg
