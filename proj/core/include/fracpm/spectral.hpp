#pragma once

#include <complex>
#include <map>
#include <span>
#include <vector>

#include "fracpm/fft.hpp"
#include "fracpm/grid.hpp"

namespace fracpm {

SpectralCoeffs dft_forward(const ScalarField& f);
/// Real part of the inverse transform; non-finite coefficients are rejected.
ScalarField dft_inverse(const SpectralCoeffs& c);

/// i*pi*k/|k|^eps, zero at k = 0.
std::complex<double> frac_derivative_multiplier(int k, double eps);
/// |k|^-eps, zero at k = 0.
double frac_smoothing_multiplier(int k1, int k2, double eps);

/// 1D fractional derivative d^{1-eps}u.
ScalarField frac_derivative_1d(const ScalarField& u, const FracParams& p);
/// Multiplier |k|^-eps (k = 0 zeroed) applied to a 2D field.
ScalarField frac_smoothing_2d(const ScalarField& g, const FracParams& p);
/// 2D fractional gradient: frac_smoothing_2d(|grad u|).
ScalarField frac_gradient_2d(const ScalarField& u, const FracParams& p);
/// Dispatches on grid dimension.
ScalarField frac_field(const ScalarField& u, const FracParams& p);

/// Spectral partial derivatives, one field per axis.
std::vector<ScalarField> gradient(const ScalarField& u);
ScalarField divergence(std::span<const ScalarField> components);
ScalarField laplacian(const ScalarField& u);
ScalarField gradient_magnitude(const ScalarField& u);

/// 1/(1+v^2).
ScalarField alpha_from_fracfield(const ScalarField& v);
/// div(alpha grad w), spectral derivatives and pointwise product.
ScalarField pm_divergence_form(const ScalarField& w, const ScalarField& alpha);

/// Reusable transform buffers and symbols for repeated operator applications
/// on one grid. Not thread-safe; use one per worker.
///
/// Derivative symbols vanish on the Nyquist line, which is the same as taking
/// the real part of the full product, so div(grad) equals the Laplacian symbol
/// used here exactly.
class SpectralWorkspace {
 public:
  explicit SpectralWorkspace(const PeriodicGrid& grid);

  [[nodiscard]] const PeriodicGrid& grid() const noexcept { return grid_; }

  /// -sum_j d_j(k)^2 >= 0 per slot, i.e. the symbol of -Laplacian.
  [[nodiscard]] std::span<const double> neg_laplacian_symbol() const noexcept { return neg_lap_; }

  void derivative(std::span<const double> u, int axis, std::span<double> out);
  /// gx (and gy in 2D) receive the spectral gradient.
  void gradient(std::span<const double> u, std::span<double> gx, std::span<double> gy);
  void div_alpha_grad(std::span<const double> alpha, std::span<const double> w, std::span<double> out);
  /// out = F^-1[ mult(k) F u ] for a real even symbol in slot order.
  void apply_symbol(std::span<const double> u, std::span<const double> symbol, std::span<double> out);
  void frac_field(std::span<const double> u, double eps, std::span<double> out);

 private:
  const std::vector<std::complex<double>>& frac_symbol(double eps);

  PeriodicGrid grid_;
  FftPlan plan_;
  std::vector<double> dk_;  // pi*k per axis slot, zero at Nyquist
  std::vector<double> neg_lap_;
  std::vector<std::complex<double>> a_, b_;
  std::vector<double> r0_, r1_;
  std::map<double, std::vector<std::complex<double>>> frac_cache_;
};

}  // namespace fracpm
