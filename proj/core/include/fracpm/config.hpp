#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fracpm/evolution.hpp"
#include "fracpm/geometry.hpp"
#include "fracpm/linear.hpp"

namespace fracpm {

enum class PerturbationKind { Sine, Mode, Noise, File, Zero };

struct PerturbationSpec {
  PerturbationKind kind = PerturbationKind::Sine;
  double amplitude = 1e-3;
  bool taper = true;             // multiply by the capped distance
  std::filesystem::path file;    // kind = file
  int wavenumber = 1;            // kind = mode: sin(pi m (x - c)) per axis
  Point center{0.0, 0.0};        // kind = mode
};

struct FitWindow {
  double dmin = 1e-4;
  double dmax = 1e-2;
  std::size_t probes = 32;
};

/// Parsed run configuration. Only `dim` and `epsilon` are mandatory.
struct RunConfig {
  int dim = 0;
  double epsilon = 0.0;
  std::size_t n = 0;  // 0: 512 in 1D, 64 in 2D
  double delta = 0.2;
  std::uint64_t seed = 0;
  bool check_sign = false;
  std::filesystem::path out = "fracpm-out";
  std::vector<double> jump_points{-0.5, 0.5};
  std::vector<double> jump_values{1.0, 0.0};
  std::vector<std::array<double, 3>> circles{{0.0, 0.0, 0.5}};
  std::vector<std::vector<Point>> splines;
  std::vector<double> inside_values;  // empty: 1 for every curve
  double outside_value = 0.0;
  PerturbationSpec perturbation;
  SolverConfig solver;
  FitWindow fit;
  EigenPath eigen_path = EigenPath::Auto;
  std::size_t eigen_count = 10;
  bool unit_alpha = false;  // spectrum.alpha = one: alpha = 1 instead of the oracle coefficient
  std::map<std::string, double> verify_constants;  // verify.<name> overrides
  std::vector<std::string> verify_only;

  [[nodiscard]] std::size_t grid_size() const { return n != 0 ? n : (dim == 1 ? 512 : 64); }
  [[nodiscard]] PeriodicGrid grid() const { return PeriodicGrid(dim, grid_size()); }
  [[nodiscard]] FracParams params() const { return FracParams(epsilon, check_sign); }
  [[nodiscard]] JumpSet jump_set() const;
};

/// Parses `key = value` lines; '#' starts a comment. Unknown or repeated keys,
/// unparsable values and missing mandatory keys throw Config. With
/// `require_run_keys` false, `dim` and `epsilon` may be omitted (verify configs).
[[nodiscard]] RunConfig parse_config(const std::string& text, bool require_run_keys = true);
[[nodiscard]] RunConfig load_config(const std::filesystem::path& path, bool require_run_keys = true);

/// Names of the suite constants that `verify.<name>` may override.
[[nodiscard]] const std::vector<std::string>& suite_constant_names();

/// All accepted keys with a one-line description.
[[nodiscard]] const std::map<std::string, std::string>& config_keys();

}  // namespace fracpm
