#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fracpm {

/// A point of Q^N = [-1,1)^N. 1D code reads only the first coordinate.
using Point = std::array<double, 2>;

/// Uniform tensor grid on [-1,1)^dim with n points per axis, x_j = -1 + j*h.
class PeriodicGrid {
 public:
  PeriodicGrid(int dim, std::size_t n);

  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  [[nodiscard]] double spacing() const noexcept { return 2.0 / static_cast<double>(n_); }
  [[nodiscard]] std::size_t size() const noexcept { return dim_ == 1 ? n_ : n_ * n_; }

  [[nodiscard]] double coord(std::size_t j) const noexcept {
    return -1.0 + static_cast<double>(j) * spacing();
  }

  /// Node position for a row-major flat index (axis 0 is the slow index).
  [[nodiscard]] Point node(std::size_t flat) const noexcept;

  /// Fourier index of FFT slot j: {0..n/2-1} then {-n/2..-1}.
  [[nodiscard]] int wavenumber(std::size_t j) const noexcept {
    const auto half = n_ / 2;
    return j < half ? static_cast<int>(j) : static_cast<int>(j) - static_cast<int>(n_);
  }

  /// FFT slot holding Fourier index k, k in [-n/2, n/2).
  [[nodiscard]] std::size_t slot(int k) const;

  friend bool operator==(const PeriodicGrid&, const PeriodicGrid&) = default;

 private:
  int dim_;
  std::size_t n_;
};

/// Real samples on a grid, one per node, row-major. Entries are finite.
class ScalarField {
 public:
  explicit ScalarField(const PeriodicGrid& grid);  // zero field
  ScalarField(const PeriodicGrid& grid, std::vector<double> values);

  template <typename F>
  static ScalarField from_function(const PeriodicGrid& grid, F&& f) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.node(i));
    return ScalarField(grid, std::move(v));
  }

  [[nodiscard]] const PeriodicGrid& grid() const noexcept { return grid_; }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }

  /// Releases the sample vector, leaving this field empty.
  [[nodiscard]] std::vector<double> take_values() && noexcept { return std::move(values_); }

  [[nodiscard]] double mean() const noexcept;
  [[nodiscard]] double max_abs() const noexcept;
  /// Discrete L2 norm (trapezoid rule, h^dim weights).
  [[nodiscard]] double l2_norm() const noexcept;

 private:
  PeriodicGrid grid_;
  std::vector<double> values_;
};

/// Fourier coefficients in FFT slot order with basis exp(i*pi*k.x):
/// c(k) = n^-dim * sum_j f_j exp(-i*pi*k.x_j), so a constant maps to c(0) = const.
class SpectralCoeffs {
 public:
  explicit SpectralCoeffs(const PeriodicGrid& grid);
  SpectralCoeffs(const PeriodicGrid& grid, std::vector<std::complex<double>> coeffs);

  [[nodiscard]] const PeriodicGrid& grid() const noexcept { return grid_; }
  [[nodiscard]] std::span<const std::complex<double>> coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] std::span<std::complex<double>> coeffs() noexcept { return coeffs_; }

  [[nodiscard]] std::complex<double> at(int k) const;
  [[nodiscard]] std::complex<double> at(int k1, int k2) const;
  void set(int k, std::complex<double> value);
  void set(int k1, int k2, std::complex<double> value);

 private:
  PeriodicGrid grid_;
  std::vector<std::complex<double>> coeffs_;
};

/// Fractional order parameter eps in (0,1). `exclude_half` marks a request
/// for a sign-definite curvature claim, which is void at eps = 1/2.
struct FracParams {
  double epsilon;
  bool exclude_half = false;

  explicit FracParams(double eps, bool exclude_half_ = false);

  /// Throws ExcludedParameter when the flag is set and eps == 1/2.
  void require_not_half() const;
};

}  // namespace fracpm
