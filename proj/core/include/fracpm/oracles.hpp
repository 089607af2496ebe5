#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "fracpm/clausen.hpp"
#include "fracpm/curve.hpp"
#include "fracpm/grid.hpp"
#include "fracpm/riesz_kernel.hpp"

namespace fracpm {

/// sum_k m(k) c(k) e^{i pi k x} over the nonzero modes of a 1D coefficient set.
[[nodiscard]] double series_frac_derivative(const SpectralCoeffs& u_modes, const FracParams& p, double x);

/// 1D fractional derivative of a step function, sum_j s_j G_eps(x - a_j) / 2.
class StepField1D {
 public:
  StepField1D(std::vector<double> jump_points, std::vector<double> jump_heights, const FracParams& p);

  /// Throws Geometry at a jump point.
  [[nodiscard]] double operator()(double x) const;
  [[nodiscard]] double derivative(double x) const;
  [[nodiscard]] const ClausenEvaluator& kernel() const noexcept { return g_; }

 private:
  std::vector<double> a_;
  std::vector<double> s_;
  ClausenEvaluator g_;
};

[[nodiscard]] double fracH_1d(double x, const std::vector<double>& jump_points,
                              const std::vector<double>& jump_signs, const FracParams& p);

/// mu(k) = (1/4) int_Gamma exp(-i pi k.y) dH^1(y), by Gauss-Legendre on the curve.
[[nodiscard]] std::complex<double> surface_measure_coefficient(const CurveGamma& c, int k1, int k2,
                                                               std::size_t panels = 64);
/// Closed form for a circle: (1/4) 2 pi r J0(pi r |k|) exp(-i pi k.c).
[[nodiscard]] std::complex<double> circle_measure_coefficient(Point center, double radius, int k1, int k2);

/// 2D smoothed surface measure S(x) = sum_i |jump_i| (1/4) int_{Gamma_i} K_eps(x - y) dH^1(y),
/// i.e. |k|^-eps applied to |grad H| with the k = 0 mode removed.
class StepField2D {
 public:
  StepField2D(std::vector<CurveGamma> curves, std::vector<double> weights, const FracParams& p,
              double tau = 0.1);

  /// Throws Geometry when x is (numerically) on Gamma.
  [[nodiscard]] double operator()(const Point& x) const;
  /// Samples on a grid (long-range part by FFT when the grid carries all modes).
  [[nodiscard]] std::vector<double> sample(const PeriodicGrid& grid) const;

  [[nodiscard]] const RieszKernel2D& kernel() const noexcept { return kernel_; }
  /// Long-range coefficient for wavenumber (k1,k2), |k_i| <= kmax.
  [[nodiscard]] std::complex<double> long_coefficient(int k1, int k2) const;

  /// Parameter distance floor: closer probes are rejected.
  static constexpr double kMinDistance = 1e-12;

 private:
  [[nodiscard]] double long_range(const Point& x) const;
  [[nodiscard]] double short_range(const Point& x) const;

  std::vector<CurveGamma> curves_;
  std::vector<double> weights_;
  RieszKernel2D kernel_;
  int kmax_;
  std::vector<std::complex<double>> lcoef_;  // (2kmax+1)^2, row-major in k1
  double constant_;                          // sum_i w_i |Gamma_i| / 4 * K_const
};

[[nodiscard]] double frac_gradient_H_2d(const Point& x, const CurveGamma& gamma, const FracParams& p);

/// The plain Fourier-side route: sharp disc |k| <= K of |k|^-eps mu(k) e^{i pi k.x}
/// with tail estimate |S_K - S_{K/2}|. Throws Geometry when K < 8/d(x).
/// `riesz_order` m > 0 weights each mode by (1 - |k|^2/K^2)^m (Riesz means),
/// which damps the oscillation of the sharp cut.
struct TruncatedSum {
  double value;
  double tail;
  std::size_t modes;
};
[[nodiscard]] TruncatedSum frac_gradient_H_2d_fourier(const Point& x, const CurveGamma& gamma,
                                                      const FracParams& p, int K, int riesz_order = 0);

struct AlphaDerivatives {
  double alpha;
  Point grad;        // 1D uses grad[0]
  double laplacian;  // d^2/dx^2 in 1D
};

/// Centered differences of alpha = 1/(1+S^2) with step `step` (1D or 2D by `dim`).
template <typename F>
AlphaDerivatives alpha_derivatives_fd(const F& S, int dim, const Point& x, double step) {
  auto alpha = [&](const Point& y) {
    const double s = S(y);
    return 1.0 / (1.0 + s * s);
  };
  AlphaDerivatives out{alpha(x), {0.0, 0.0}, 0.0};
  for (int axis = 0; axis < dim; ++axis) {
    Point xp = x, xm = x;
    xp[axis] += step;
    xm[axis] -= step;
    const double ap = alpha(xp), am = alpha(xm);
    out.grad[axis] = (ap - am) / (2.0 * step);
    out.laplacian += (ap - 2.0 * out.alpha + am) / (step * step);
  }
  return out;
}

/// Same stencils applied to S itself: gradient magnitude and Laplacian.
struct FieldDerivatives {
  double value;
  double grad_norm;
  double laplacian;
};
template <typename F>
FieldDerivatives field_derivatives_fd(const F& S, int dim, const Point& x, double step) {
  FieldDerivatives out{S(x), 0.0, 0.0};
  double g2 = 0.0;
  for (int axis = 0; axis < dim; ++axis) {
    Point xp = x, xm = x;
    xp[axis] += step;
    xm[axis] -= step;
    const double sp = S(xp), sm = S(xm);
    const double g = (sp - sm) / (2.0 * step);
    g2 += g * g;
    out.laplacian += (sp - 2.0 * out.value + sm) / (step * step);
  }
  out.grad_norm = std::sqrt(g2);
  return out;
}

/// (3/2) B(1/2, (3-eps)/2) - (1/2) B(1/2, (1-eps)/2) for eps in [0,1).
[[nodiscard]] double beta_condition_value(double eps);
[[nodiscard]] double beta_condition(const FracParams& p);
/// 3 int_0^inf (1+y^2)^{-(4-eps)/2} dy - int_0^inf (1+y^2)^{-(2-eps)/2} dy by tanh-sinh quadrature.
[[nodiscard]] double beta_condition_quadrature(double eps);

}  // namespace fracpm
