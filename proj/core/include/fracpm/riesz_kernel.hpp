#pragma once

#include "fracpm/grid.hpp"

namespace fracpm {

/// Periodic Riesz-type kernel K(z) = sum_{k != 0} |k|^-eps exp(i pi k.z) on the
/// period-2 torus, evaluated by an Ewald split with Gaussian parameter tau:
///   K = sum_k |k|^-eps Q(eps/2, tau|k|^2) e^{i pi k.z}          (long range)
///     + pi/Gamma(eps/2) sum_m A_m^{eps/2-1} Gamma(1-eps/2) Q(1-eps/2, A_m/tau)
///     - 2 tau^{eps/2} / (eps Gamma(eps/2)),      A_m = pi^2 |z+2m|^2 / 4.
/// The value does not depend on tau; tau trades work between the two sums.
class RieszKernel2D {
 public:
  explicit RieszKernel2D(double epsilon, double tau = 0.1);

  [[nodiscard]] double epsilon() const noexcept { return eps_; }
  [[nodiscard]] double tau() const noexcept { return tau_; }
  /// Largest |k| kept in the long-range sum (weights below ~1e-20 dropped).
  [[nodiscard]] int kmax() const noexcept { return kmax_; }

  [[nodiscard]] double long_symbol(int k1, int k2) const;
  /// One image term at separation r = |z + 2m| > 0; zero beyond the cutoff.
  [[nodiscard]] double image_term(double r) const;
  /// Largest separation with a non-negligible image term.
  [[nodiscard]] double image_cutoff() const noexcept { return rcut_; }
  /// Sum of image terms over all periodic images of z.
  [[nodiscard]] double short_range(const Point& z) const;
  [[nodiscard]] double constant() const noexcept { return const_; }
  /// Full kernel value (direct long-range sum; for tests and single probes).
  [[nodiscard]] double operator()(const Point& z) const;

 private:
  double eps_;
  double tau_;
  int kmax_;
  double rcut_;
  double img_coeff_;  // pi Gamma(1-s) / Gamma(s) * (pi/2)^(eps-2)
  double const_;
};

}  // namespace fracpm
