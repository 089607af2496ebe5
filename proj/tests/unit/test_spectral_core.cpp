#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <thread>

#include "fracpm/error.hpp"
#include "fracpm/geometry.hpp"
#include "fracpm/oracles.hpp"
#include "fracpm/singular_field.hpp"
#include "fracpm/spectral.hpp"
#include "test_support.hpp"

using namespace fracpm;
using fracpm::testing::kPi;

// ---- grid and field types

TEST(PeriodicGrid, RejectsBadSizes) {
  EXPECT_THROW(PeriodicGrid(1, 4), Error);
  EXPECT_THROW(PeriodicGrid(1, 12), Error);
  EXPECT_THROW(PeriodicGrid(3, 8), Error);
  EXPECT_NO_THROW(PeriodicGrid(2, 8));
}

TEST(PeriodicGrid, CoordinatesCoverHalfOpenCube) {
  const PeriodicGrid g(1, 16);
  EXPECT_DOUBLE_EQ(g.spacing(), 0.125);
  EXPECT_DOUBLE_EQ(g.coord(0), -1.0);
  EXPECT_DOUBLE_EQ(g.coord(15), 1.0 - 0.125);
  for (std::size_t j = 0; j < 16; ++j) {
    EXPECT_GE(g.coord(j), -1.0);
    EXPECT_LT(g.coord(j), 1.0);
  }
}

TEST(PeriodicGrid, FourierIndexSet) {
  const PeriodicGrid g(1, 8);
  std::vector<int> ks;
  for (std::size_t j = 0; j < 8; ++j) ks.push_back(g.wavenumber(j));
  std::sort(ks.begin(), ks.end());
  EXPECT_EQ(ks, (std::vector<int>{-4, -3, -2, -1, 0, 1, 2, 3}));
  for (int k = -4; k < 4; ++k) EXPECT_EQ(g.wavenumber(g.slot(k)), k);
  EXPECT_THROW((void)g.slot(4), Error);
}

TEST(ScalarField, RejectsNonFiniteAndWrongLength) {
  const PeriodicGrid g(1, 8);
  std::vector<double> v(8, 0.0);
  v[3] = std::nan("");
  try {
    ScalarField f(g, v);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonFinite);
  }
  EXPECT_THROW(ScalarField(g, std::vector<double>(7, 0.0)), Error);
}

TEST(FracParams, RejectsOutOfRange) {
  EXPECT_THROW(FracParams(0.0), Error);
  EXPECT_THROW(FracParams(1.0), Error);
  EXPECT_NO_THROW(FracParams(0.5).require_not_half());
  try {
    FracParams(0.5, true).require_not_half();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ExcludedParameter);
  }
}

// ---- DFT

TEST(Dft, ConstantMapsToZeroMode) {
  for (int dim : {1, 2}) {
    const PeriodicGrid g(dim, 16);
    const auto c = dft_forward(ScalarField::from_function(g, [](const Point&) { return 1.0; }));
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double want = i == 0 ? 1.0 : 0.0;
      EXPECT_NEAR(std::abs(c.coeffs()[i] - std::complex<double>(want, 0.0)), 0.0, 1e-15);
    }
  }
}

TEST(Dft, CosineSingleMode) {
  const PeriodicGrid g(1, 32);
  const auto c = dft_forward(ScalarField::from_function(g, [](const Point& x) { return std::cos(kPi * x[0]); }));
  for (int k = -16; k < 16; ++k) {
    const double want = std::abs(k) == 1 ? 0.5 : 0.0;
    EXPECT_NEAR(std::abs(c.at(k) - std::complex<double>(want, 0.0)), 0.0, 1e-15) << "k=" << k;
  }
}

TEST(Dft, MatchesDirectSummation) {
  for (int dim : {1, 2}) {
    const PeriodicGrid g(dim, dim == 1 ? 64 : 16);
    const auto f = fracpm::testing::random_field(g, 7);
    const auto fast = dft_forward(f);
    const auto slow = fracpm::testing::direct_dft(f);
    double err = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(fast.coeffs()[i] - slow.coeffs()[i]));
    EXPECT_LT(err, 1e-14) << "dim " << dim;
  }
}

TEST(Dft, RoundTripAllSizes) {
  for (std::size_t n = 8; n <= 4096; n *= 2) {
    const PeriodicGrid g(1, n);
    const auto f = fracpm::testing::random_field(g, n);
    EXPECT_LT(fracpm::testing::max_diff(dft_inverse(dft_forward(f)), f), 1e-12) << "n=" << n;
  }
  for (std::size_t n = 8; n <= 256; n *= 2) {
    const PeriodicGrid g(2, n);
    const auto f = fracpm::testing::random_field(g, n + 1);
    EXPECT_LT(fracpm::testing::max_diff(dft_inverse(dft_forward(f)), f), 1e-12) << "n=" << n << "^2";
  }
}

TEST(Dft, RealFieldHasConjugateSymmetry) {
  const PeriodicGrid g(1, 32);
  const auto c = dft_forward(fracpm::testing::random_field(g, 3));
  for (int k = -15; k < 16; ++k) EXPECT_NEAR(std::abs(c.at(-k) - std::conj(c.at(k))), 0.0, 1e-15);
}

TEST(Dft, RejectsNonFiniteCoefficients) {
  const PeriodicGrid g(1, 8);
  SpectralCoeffs c(g);
  c.set(1, {std::numeric_limits<double>::infinity(), 0.0});
  try {
    (void)dft_inverse(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonFinite);
  }
}

// ---- 1D fractional derivative

TEST(FracDerivative1D, ConstantIsAnnihilated) {
  const PeriodicGrid g(1, 64);
  const auto u = ScalarField::from_function(g, [](const Point&) { return 5.0; });
  EXPECT_EQ(frac_derivative_1d(u, FracParams(0.3)).max_abs(), 0.0);
}

TEST(FracDerivative1D, SineMapsToPiCosineForEveryEps) {
  const PeriodicGrid g(1, 64);
  const auto u = ScalarField::from_function(g, [](const Point& x) { return std::sin(kPi * x[0]); });
  const auto want = ScalarField::from_function(g, [](const Point& x) { return kPi * std::cos(kPi * x[0]); });
  for (int i = 1; i <= 9; ++i) {
    EXPECT_LT(fracpm::testing::max_diff(frac_derivative_1d(u, FracParams(0.1 * i)), want), 1e-12);
  }
}

TEST(FracDerivative1D, SecondModeAtHalf) {
  const PeriodicGrid g(1, 64);
  const auto u = ScalarField::from_function(g, [](const Point& x) { return std::sin(2 * kPi * x[0]); });
  const auto want =
      ScalarField::from_function(g, [](const Point& x) { return kPi * std::sqrt(2.0) * std::cos(2 * kPi * x[0]); });
  EXPECT_LT(fracpm::testing::max_diff(frac_derivative_1d(u, FracParams(0.5)), want), 1e-12);
}

TEST(FracDerivative1D, MatchesSeriesOracleOnRandomPolynomials) {
  const PeriodicGrid g(1, 1024);
  for (double eps : {0.2, 0.5, 0.8}) {
    const auto c = fracpm::testing::random_modes(g, 50, 200, 11);
    const auto u = dft_inverse(c);
    const FracParams p(eps);
    const auto du = frac_derivative_1d(u, p);
    double err = 0.0;
    for (std::size_t j = 0; j < g.n(); ++j) {
      err = std::max(err, std::abs(du[j] - series_frac_derivative(c, p, g.coord(j))));
    }
    EXPECT_LT(err, 1e-10) << "eps=" << eps;
  }
}

TEST(FracDerivative1D, MeanIsZero) {
  const PeriodicGrid g(1, 128);
  const auto du = frac_derivative_1d(fracpm::testing::random_field(g, 5), FracParams(0.4));
  EXPECT_LT(std::abs(du.mean()), 1e-15);
}

TEST(FracDerivative1D, RejectsTwoDimensionalGrid) {
  EXPECT_THROW((void)frac_derivative_1d(ScalarField(PeriodicGrid(2, 8)), FracParams(0.3)), Error);
}

TEST(FracDerivative1D, IsLinear) {
  const PeriodicGrid g(1, 256);
  const auto u = fracpm::testing::random_field(g, 1);
  const auto v = fracpm::testing::random_field(g, 2);
  const FracParams p(0.35);
  std::vector<double> comb(g.size());
  for (std::size_t i = 0; i < comb.size(); ++i) comb[i] = 2.5 * u[i] - 0.75 * v[i];
  const auto lhs = frac_derivative_1d(ScalarField(g, comb), p);
  const auto du = frac_derivative_1d(u, p), dv = frac_derivative_1d(v, p);
  double err = 0.0;
  for (std::size_t i = 0; i < comb.size(); ++i) err = std::max(err, std::abs(lhs[i] - (2.5 * du[i] - 0.75 * dv[i])));
  EXPECT_LT(err, 1e-12);
}

TEST(FracDerivative1D, SwapsParity) {
  const PeriodicGrid g(1, 128);
  const auto even = ScalarField::from_function(
      g, [](const Point& x) { return std::cos(3 * kPi * x[0]) + 0.3 * std::cos(7 * kPi * x[0]) + x[0] * x[0]; });
  const auto odd = ScalarField::from_function(
      g, [](const Point& x) { return std::sin(2 * kPi * x[0]) + 0.1 * std::sin(9 * kPi * x[0]); });
  const FracParams p(0.6);
  const auto de = frac_derivative_1d(even, p), dodd = frac_derivative_1d(odd, p);
  // node j and its mirror n-j (x -> -x); x = -1 maps to itself
  for (std::size_t j = 1; j < g.n(); ++j) {
    EXPECT_NEAR(de[j], -de[g.n() - j], 1e-11);
    EXPECT_NEAR(dodd[j], dodd[g.n() - j], 1e-11);
  }
}

TEST(FracDerivative1D, MultiplierContinuousInEps) {
  for (int k : {-7, -1, 1, 3, 40}) {
    for (double eps = 0.05; eps < 0.95; eps += 0.05) {
      const auto a = frac_derivative_multiplier(k, eps);
      const auto b = frac_derivative_multiplier(k, eps + 1e-9);
      EXPECT_LT(std::abs(a - b), 1e-6) << k << " " << eps;
      EXPECT_EQ(a.real(), 0.0);
    }
  }
  EXPECT_EQ(frac_derivative_multiplier(0, 0.3), std::complex<double>(0.0, 0.0));
}

// ---- 2D fractional gradient

TEST(FracGradient2D, ConstantGivesZero) {
  const PeriodicGrid g(2, 32);
  const auto u = ScalarField::from_function(g, [](const Point&) { return 3.0; });
  EXPECT_LT(frac_gradient_2d(u, FracParams(0.4)).max_abs(), 1e-14);
}

TEST(FracGradient2D, SmoothingKeepsUnitMode) {
  const PeriodicGrid g(2, 32);
  const auto c = ScalarField::from_function(g, [](const Point& x) { return std::cos(kPi * x[0]); });
  for (double eps : {0.1, 0.5, 0.9}) {
    EXPECT_LT(fracpm::testing::max_diff(frac_smoothing_2d(c, FracParams(eps)), c), 1e-13);
  }
}

TEST(FracGradient2D, RejectsOneDimensionalGrid) {
  EXPECT_THROW((void)frac_gradient_2d(ScalarField(PeriodicGrid(1, 8)), FracParams(0.3)), Error);
  EXPECT_THROW((void)frac_smoothing_2d(ScalarField(PeriodicGrid(1, 8)), FracParams(0.3)), Error);
}

// Cosine-series oracle for |grad sin(pi x1)| = pi |cos(pi x1)|: coefficients by
// Gauss quadrature on the two smooth half-periods, folded onto the grid index
// set (the grid samples alias k + jN onto k), multiplier applied per mode.
TEST(FracGradient2D, SineMatchesCosineSeriesOracle) {
  const std::size_t n = 32;
  const PeriodicGrid g(2, n);
  const auto u = ScalarField::from_function(g, [](const Point& x) { return std::sin(kPi * x[0]); });
  auto coeff = [](int k) {
    // (1/2) int_{-1}^{1} pi|cos(pi x)| e^{-i pi k x} dx, real by symmetry
    auto f = [k](double x) { return kPi * std::abs(std::cos(kPi * x)) * std::cos(kPi * k * x); };
    using GL = boost::math::quadrature::gauss<double, 30>;
    return 0.5 * (GL::integrate(f, -1.0, -0.5) + GL::integrate(f, -0.5, 0.5) + GL::integrate(f, 0.5, 1.0));
  };
  // odd k vanish; k = 2m gives (-1)^{m+1} 2/(4m^2-1)
  auto closed = [](int k) {
    if (k % 2 != 0) return 0.0;
    const int m = std::abs(k) / 2;
    return (m % 2 == 0 ? -1.0 : 1.0) * 2.0 / (4.0 * m * m - 1.0);
  };
  for (int k = 0; k <= 12; ++k) ASSERT_NEAR(coeff(k), closed(k), 1e-12) << k;

  const int half = static_cast<int>(n / 2);
  for (double eps : {0.3, 0.7}) {
    std::vector<double> folded(n, 0.0);
    for (int k = -half; k < half; ++k) {
      double s = 0.0;
      const int J = 20000;
      for (int j = -J; j <= J; ++j) {
        const int kk = k + j * static_cast<int>(n);
        s += std::abs(kk) <= 12 ? coeff(kk) : closed(kk);
      }
      if (k % 2 == 0) {
        // remaining images: closed(kk) ~ sign/m^2 with fixed sign; midpoint-rule integral
        const double sign = (std::abs(k) / 2) % 2 == 0 ? -1.0 : 1.0;
        const double N = static_cast<double>(n), a = N * (J + 0.5);
        s += sign * 2.0 * (1.0 / (N * (a + k)) + 1.0 / (N * (a - k)));
      }
      folded[g.slot(k)] = s * frac_smoothing_multiplier(k, 0, eps);
    }
    const auto got = frac_gradient_2d(u, FracParams(eps));
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = g.coord(i);
      double want = 0.0;
      for (int k = -half; k < half; ++k) want += folded[g.slot(k)] * std::cos(kPi * k * x);
      for (std::size_t j = 0; j < n; ++j) err = std::max(err, std::abs(got[i * n + j] - want));
    }
    EXPECT_LT(err, 1e-8) << "eps=" << eps;
  }
}

// ---- coefficient and divergence form

TEST(AlphaFromFracfield, KnownValues) {
  const PeriodicGrid g(1, 16);
  EXPECT_EQ(alpha_from_fracfield(ScalarField(g)).max_abs(), 1.0);
  const auto half = alpha_from_fracfield(ScalarField::from_function(g, [](const Point&) { return 1.0; }));
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_DOUBLE_EQ(half[i], 0.5);
}

TEST(AlphaFromFracfield, BoundedAndMonotoneInMagnitude) {
  const PeriodicGrid g(1, 1024);
  const auto v = ScalarField::from_function(g, [](const Point& x) { return 40.0 * x[0]; });
  const auto a = alpha_from_fracfield(v);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_GT(a[i], 0.0);
    EXPECT_LE(a[i], 1.0);
    for (std::size_t j = 0; j < g.size(); j += 37) {
      if (std::abs(v[j]) > std::abs(v[i])) EXPECT_LE(a[j], a[i]);
    }
  }
}

TEST(AlphaFromFracfield, OracleFieldGivesCoefficientExponent) {
  // pointwise map applied to oracle samples at normal probes near the jump at 1/2
  const double eps = 0.3;
  const auto js = JumpSet::centered_interval();
  const SingularField S(js, FracParams(eps));
  const auto probes = normal_probes(js, 1, 0.0, log_spaced(1e-4, 1e-2, 32));
  std::vector<double> v;
  for (const auto& pr : probes) v.push_back(S(pr.x));
  const auto a = alpha_from_fracfield(ScalarField(PeriodicGrid(1, 32), v));
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < probes.size(); ++i) pts.emplace_back(probes[i].d, a[i]);
  EXPECT_NEAR(exponent_fit(pts).slope, 2.0 - 2.0 * eps, 0.05);
}

TEST(PmDivergenceForm, ConstantGivesZero) {
  const PeriodicGrid g(1, 64);
  const auto w = ScalarField::from_function(g, [](const Point&) { return 2.0; });
  const auto a = ScalarField::from_function(g, [](const Point& x) { return 0.5 + 0.25 * std::sin(kPi * x[0]); });
  EXPECT_LT(pm_divergence_form(w, a).max_abs(), 1e-13);
}

TEST(PmDivergenceForm, UnitCoefficientIsLaplacian) {
  for (int dim : {1, 2}) {
    const PeriodicGrid g(dim, 32);
    const auto w = ScalarField::from_function(g, [](const Point& x) { return std::sin(kPi * x[0]); });
    const auto one = ScalarField::from_function(g, [](const Point&) { return 1.0; });
    const auto want = ScalarField::from_function(g, [](const Point& x) { return -kPi * kPi * std::sin(kPi * x[0]); });
    EXPECT_LT(fracpm::testing::max_diff(pm_divergence_form(w, one), want), 1e-12) << dim;
  }
}

TEST(PmDivergenceForm, OracleCoefficientConservesMean) {
  for (int dim : {1, 2}) {
    const PeriodicGrid g(dim, dim == 1 ? 256 : 32);
    const auto js = dim == 1 ? JumpSet::centered_interval() : JumpSet::centered_disc(0.5);
    const auto aligned = align_to_grid(js, g);
    const SingularField S(aligned.js, FracParams(0.7));
    const auto alpha = alpha_from_fracfield(ScalarField(g, S.sample(g)));
    const auto w = fracpm::testing::random_field(g, 9);
    const auto out = pm_divergence_form(w, alpha);
    EXPECT_LT(std::abs(out.mean()), 1e-12) << dim;
    double sum = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) sum += out[i];
    EXPECT_LT(std::abs(sum), 1e-12 * static_cast<double>(out.size())) << dim;
  }
}

TEST(PmDivergenceForm, RejectsMismatchAndNonPositiveAlpha) {
  const PeriodicGrid g(1, 16);
  EXPECT_THROW((void)pm_divergence_form(ScalarField(g), ScalarField(PeriodicGrid(1, 32))), Error);
  EXPECT_THROW((void)pm_divergence_form(ScalarField(g), ScalarField(g)), Error);
}

TEST(SpectralOperators, DivergenceOfGradientIsLaplacian) {
  const PeriodicGrid g(2, 32);
  const auto u = fracpm::testing::random_field(g, 4);
  const auto grad = gradient(u);
  EXPECT_LT(fracpm::testing::max_diff(divergence(grad), laplacian(u)), 1e-9);
}

TEST(SpectralOperators, ConcurrentCallsDoNotInterfere) {
  const PeriodicGrid g(1, 512);
  std::vector<ScalarField> in, serial;
  for (int t = 0; t < 6; ++t) {
    in.push_back(fracpm::testing::random_field(g, 100 + t));
    serial.push_back(frac_derivative_1d(in.back(), FracParams(0.1 + 0.1 * t)));
  }
  std::vector<std::vector<double>> par(in.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < in.size(); ++t) {
      pool.emplace_back([&, t] {
        for (int rep = 0; rep < 20; ++rep) {
          const auto r = frac_derivative_1d(in[t], FracParams(0.1 + 0.1 * static_cast<double>(t)));
          par[t].assign(r.values().begin(), r.values().end());
        }
      });
    }
  }
  for (std::size_t t = 0; t < in.size(); ++t) {
    for (std::size_t i = 0; i < g.size(); ++i) ASSERT_EQ(par[t][i], serial[t][i]);
  }
}
