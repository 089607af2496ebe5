#pragma once

#include <cstddef>
#include <vector>

#include "fracpm/grid.hpp"

namespace fracpm {

enum class ClausenScheme {
  /// Singular power term plus the zeta-value power series (|x| <= 1 after reduction).
  ZetaSeries,
  /// K explicit terms, tail by repeated summation by parts.
  PartialSumTail,
};

/// G_eps(x) = 2 sum_{k>=1} cos(pi k x) / k^eps. Immutable after construction.
class ClausenEvaluator {
 public:
  explicit ClausenEvaluator(double epsilon, ClausenScheme scheme = ClausenScheme::ZetaSeries,
                            std::size_t terms = 10000, double tolerance = 1e-12);

  [[nodiscard]] double epsilon() const noexcept { return eps_; }
  [[nodiscard]] ClausenScheme scheme() const noexcept { return scheme_; }
  [[nodiscard]] std::size_t terms() const noexcept { return terms_; }

  /// Throws InvalidArgument at x = 0 mod 2 and Tolerance when the tail
  /// expansion cannot reach the configured tolerance.
  [[nodiscard]] double operator()(double x) const;
  /// dG/dx from the same expansion (ZetaSeries only).
  [[nodiscard]] double derivative(double x) const;

 private:
  [[nodiscard]] double zeta_series(double r) const;
  [[nodiscard]] double partial_sum_tail(double r) const;

  double eps_;
  ClausenScheme scheme_;
  std::size_t terms_;
  double tol_;
  double sing_coeff_;          // 2 Gamma(1-eps) sin(pi eps/2) pi^(eps-1)
  std::vector<double> coeff_;  // 2 (-1)^m zeta(eps-2m) pi^2m / (2m)!
};

/// Reduces x to r = |x| mod 2 folded into [0, 1].
[[nodiscard]] double fold_period_two(double x) noexcept;

[[nodiscard]] double clausen_G(double x, const FracParams& p);

}  // namespace fracpm
