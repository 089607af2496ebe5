#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fracpm/evolution.hpp"
#include "fracpm/grid.hpp"

namespace fracpm {

/// First line of a field file: a JSON object terminated by '\n', followed by
/// row-major little-endian binary64 samples.
struct FieldHeader {
  int dim = 1;
  std::size_t n = 0;
  double epsilon = 0.0;
  std::string kind;
};

void write_field(const std::filesystem::path& path, const ScalarField& f, double epsilon, const std::string& kind);

struct LoadedField {
  FieldHeader header;
  ScalarField field;
};
[[nodiscard]] LoadedField read_field(const std::filesystem::path& path);

/// Serialized bytes of a field file (header line + payload).
[[nodiscard]] std::string encode_field(const ScalarField& f, double epsilon, const std::string& kind);

/// Writes to a temporary sibling and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& bytes);

/// 17 significant digits: round-trips binary64.
[[nodiscard]] std::string format_double(double v);

/// RFC 4180 CSV; cells containing separators or quotes are quoted.
[[nodiscard]] std::string csv_table(const std::vector<std::string>& columns,
                                    const std::vector<std::vector<std::string>>& rows);

/// Columns t, l2_w, linf_u, mean_u, energy.
[[nodiscard]] std::string trajectory_csv(const Trajectory& traj);

}  // namespace fracpm
