#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace fracpm {

/// Tolerances and budgets of the verification suite. Every field can be
/// overridden by `verify.<name>` in a config file.
struct SuiteConstants {
  double operator_tolerance = 1e-10;
  double operator_runtime = 1.0;  // seconds
  double slope_tolerance_1d = 0.05;
  double bound_E = 10.0;
  double slope_tolerance_2d = 0.08;
  double runtime_2d = 60.0;
  double fourier_crosscheck = 1e-2;  // relative, Riesz-mean Fourier route vs the oracle
  double beta_tolerance = 1e-10;
  double alpha_slope_tolerance = 0.05;
  double stationary_bound = 1e-12;
  double stationary_runtime = 120.0;
  double contraction_slack = 1e-8;
  double mean_drift = 1e-10;
  double gap_variation = 0.10;
  double decay_match = 0.20;
  double fd_tolerance = 1e-10;
  double trivial_tolerance = 1e-12;

  /// Name -> value view, in a fixed order.
  [[nodiscard]] std::vector<std::pair<std::string, double>> entries() const;
  /// Throws Config on an unknown name.
  void set(const std::string& name, double value);
};

struct SuiteOptions {
  SuiteConstants constants;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::vector<std::string> only;  // empty: all criteria
};

struct CriterionResult {
  std::string id;
  bool pass = false;
  std::string detail;  // one line, names the first failing check
  std::vector<std::pair<std::string, double>> metrics;
  double seconds = 0.0;
};

struct Criterion {
  std::string id;
  std::string title;
  std::string claim;    // the property being checked, in words
  std::string command;  // the command invocation that reproduces it
  std::function<CriterionResult(const SuiteOptions&)> run;
};

[[nodiscard]] const std::vector<Criterion>& criteria();

/// Runs the selected criteria on up to `threads` workers; results are in
/// registry order. Exceptions inside a criterion turn into a failure.
[[nodiscard]] std::vector<CriterionResult> run_suite(const SuiteOptions& options);

/// JSON summary: constants, per-criterion pass/metrics/detail, overall pass.
[[nodiscard]] std::string suite_summary_json(const SuiteOptions& options,
                                             const std::vector<CriterionResult>& results);

/// Worker cap from FRACPM_THREADS (default: hardware concurrency, at least 1).
[[nodiscard]] unsigned worker_count_from_env();

}  // namespace fracpm
