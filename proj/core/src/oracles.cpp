#include "fracpm/oracles.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "fracpm/error.hpp"
#include "fracpm/fft.hpp"
#include "fracpm/spectral.hpp"
#include "gauss_rule.hpp"

namespace fracpm {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// Largest parameter panel used away from the near-singular point.
constexpr double kMaxPanel = 1.0 / 32.0;

}  // namespace

double series_frac_derivative(const SpectralCoeffs& u_modes, const FracParams& p, double x) {
  const auto& grid = u_modes.grid();
  if (grid.dim() != 1) throw Error(ErrorKind::InvalidArgument, "series_frac_derivative is one-dimensional");
  const auto c = u_modes.coeffs();
  long double re = 0.0L;
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (c[j] == cd(0.0, 0.0)) continue;
    const int k = grid.wavenumber(j);
    const cd term = frac_derivative_multiplier(k, p.epsilon) * c[j] * std::polar(1.0, kPi * k * x);
    re += term.real();
  }
  return static_cast<double>(re);
}

// --- 1D step field ---

StepField1D::StepField1D(std::vector<double> jump_points, std::vector<double> jump_heights, const FracParams& p)
    : a_(std::move(jump_points)), s_(std::move(jump_heights)), g_(p.epsilon) {
  if (a_.size() != s_.size() || a_.empty()) {
    throw Error(ErrorKind::InvalidArgument, "one jump height per jump point is required");
  }
}

double StepField1D::operator()(double x) const {
  double sum = 0.0;
  for (std::size_t j = 0; j < a_.size(); ++j) {
    if (fold_period_two(x - a_[j]) == 0.0) {
      throw Error(ErrorKind::Geometry, "step field evaluated at jump point " + std::to_string(a_[j]));
    }
    sum += s_[j] * g_(x - a_[j]);
  }
  return 0.5 * sum;
}

double StepField1D::derivative(double x) const {
  double sum = 0.0;
  for (std::size_t j = 0; j < a_.size(); ++j) {
    if (fold_period_two(x - a_[j]) == 0.0) {
      throw Error(ErrorKind::Geometry, "step field evaluated at jump point " + std::to_string(a_[j]));
    }
    sum += s_[j] * g_.derivative(x - a_[j]);
  }
  return 0.5 * sum;
}

double fracH_1d(double x, const std::vector<double>& jump_points, const std::vector<double>& jump_signs,
                const FracParams& p) {
  return StepField1D(jump_points, jump_signs, p)(x);
}

// --- surface measure ---

std::complex<double> surface_measure_coefficient(const CurveGamma& c, int k1, int k2, std::size_t panels) {
  cd sum = 0.0;
  for (const auto& nd : c.quadrature(panels)) {
    sum += nd.weight * std::polar(1.0, -kPi * (k1 * nd.y[0] + k2 * nd.y[1]));
  }
  return 0.25 * sum;
}

std::complex<double> circle_measure_coefficient(Point center, double radius, int k1, int k2) {
  const double kk = std::hypot(static_cast<double>(k1), static_cast<double>(k2));
  const double j0 = boost::math::cyl_bessel_j(0, kPi * radius * kk);
  return 0.25 * 2.0 * kPi * radius * j0 * std::polar(1.0, -kPi * (k1 * center[0] + k2 * center[1]));
}

// --- 2D step field ---

StepField2D::StepField2D(std::vector<CurveGamma> curves, std::vector<double> weights, const FracParams& p,
                         double tau)
    : curves_(std::move(curves)), weights_(std::move(weights)), kernel_(p.epsilon, tau), kmax_(kernel_.kmax()) {
  if (curves_.size() != weights_.size() || curves_.empty()) {
    throw Error(ErrorKind::InvalidArgument, "one weight per curve is required");
  }
  const int side = 2 * kmax_ + 1;
  lcoef_.assign(static_cast<std::size_t>(side) * side, cd(0.0, 0.0));
  constant_ = 0.0;
  for (std::size_t i = 0; i < curves_.size(); ++i) {
    const auto& c = curves_[i];
    const double w = weights_[i];
    constant_ += w * c.length() / 4.0 * kernel_.constant();
    std::vector<CurveGamma::Node> nodes;
    if (!c.is_circle()) nodes = c.quadrature(std::max<std::size_t>(64, 8 * c.control_points().size()));
    for (int k1 = -kmax_; k1 <= kmax_; ++k1) {
      for (int k2 = -kmax_; k2 <= kmax_; ++k2) {
        const double sym = kernel_.long_symbol(k1, k2);
        if (sym == 0.0) continue;
        cd mu;
        if (c.is_circle()) {
          mu = circle_measure_coefficient(c.center(), c.radius(), k1, k2);
        } else {
          cd s = 0.0;
          for (const auto& nd : nodes) s += nd.weight * std::polar(1.0, -kPi * (k1 * nd.y[0] + k2 * nd.y[1]));
          mu = 0.25 * s;
        }
        lcoef_[static_cast<std::size_t>((k1 + kmax_) * side + (k2 + kmax_))] += w * sym * mu;
      }
    }
  }
}

std::complex<double> StepField2D::long_coefficient(int k1, int k2) const {
  if (std::abs(k1) > kmax_ || std::abs(k2) > kmax_) return {0.0, 0.0};
  const int side = 2 * kmax_ + 1;
  return lcoef_[static_cast<std::size_t>((k1 + kmax_) * side + (k2 + kmax_))];
}

double StepField2D::long_range(const Point& x) const {
  const int side = 2 * kmax_ + 1;
  std::vector<cd> e1(side), e2(side);
  for (int k = -kmax_; k <= kmax_; ++k) {
    e1[k + kmax_] = std::polar(1.0, kPi * k * x[0]);
    e2[k + kmax_] = std::polar(1.0, kPi * k * x[1]);
  }
  double sum = 0.0;
  for (int a = 0; a < side; ++a) {
    cd row = 0.0;
    for (int b = 0; b < side; ++b) row += lcoef_[static_cast<std::size_t>(a * side + b)] * e2[b];
    sum += (row * e1[a]).real();
  }
  return sum;
}

double StepField2D::short_range(const Point& x) const {
  const auto& g = detail::gauss16();
  const double rcut = kernel_.image_cutoff();
  const Point xr{x[0] - 2.0 * std::round(x[0] / 2.0), x[1] - 2.0 * std::round(x[1] / 2.0)};
  double total = 0.0;
  for (std::size_t i = 0; i < curves_.size(); ++i) {
    const auto& c = curves_[i];
    const auto b = c.bounds();
    double acc = 0.0;
    for (int m0 = -1; m0 <= 1; ++m0) {
      for (int m1 = -1; m1 <= 1; ++m1) {
        const Point y{xr[0] + 2.0 * m0, xr[1] + 2.0 * m1};
        const double bx = std::max({b[0] - y[0], 0.0, y[0] - b[2]});
        const double by = std::max({b[1] - y[1], 0.0, y[1] - b[3]});
        if (std::hypot(bx, by) >= rcut) continue;
        const auto pr = c.project(y);
        if (pr.distance < kMinDistance) {
          throw Error(ErrorKind::Geometry, "2D step field evaluated on Gamma");
        }
        // Panels graded geometrically away from the foot point, both directions.
        const double v0 = c.speed(pr.t);
        double len = std::min(pr.distance / (4.0 * v0), kMaxPanel / 2.0);
        double start = 0.0;
        while (start < 0.5) {
          const double end = std::min(start + len, 0.5);
          const double half = 0.5 * (end - start);
          const double mid = 0.5 * (end + start);
          for (int dir = -1; dir <= 1; dir += 2) {
            for (std::size_t q = 0; q < 16; ++q) {
              const double t = pr.t + dir * (mid + half * g.x[q]);
              const auto p = c.point(t);
              const double r = std::hypot(y[0] - p[0], y[1] - p[1]);
              acc += half * g.w[q] * c.speed(t) * kernel_.image_term(r);
            }
          }
          start = end;
          len = std::min(2.0 * len, kMaxPanel);
        }
      }
    }
    total += weights_[i] * 0.25 * acc;
  }
  return total;
}

double StepField2D::operator()(const Point& x) const { return long_range(x) + short_range(x) + constant_; }

std::vector<double> StepField2D::sample(const PeriodicGrid& grid) const {
  if (grid.dim() != 2) throw Error(ErrorKind::InvalidArgument, "2D step field needs a 2D grid");
  std::vector<double> out(grid.size());
  const auto n = grid.n();
  if (static_cast<int>(n / 2) > kmax_) {
    SpectralCoeffs c(grid);
    for (int k1 = -kmax_; k1 <= kmax_; ++k1)
      for (int k2 = -kmax_; k2 <= kmax_; ++k2) c.set(k1, k2, long_coefficient(k1, k2));
    FftPlan plan(grid);
    plan.inverse(c.coeffs(), std::span<double>(out));
  } else {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = long_range(grid.node(i));
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += short_range(grid.node(i)) + constant_;
  return out;
}

double frac_gradient_H_2d(const Point& x, const CurveGamma& gamma, const FracParams& p) {
  const StepField2D f({gamma}, {1.0}, p);
  return f(x);
}

TruncatedSum frac_gradient_H_2d_fourier(const Point& x, const CurveGamma& gamma, const FracParams& p, int K,
                                        int riesz_order) {
  if (riesz_order < 0) throw Error(ErrorKind::InvalidArgument, "Riesz order must be non-negative");
  if (K < 2) throw Error(ErrorKind::InvalidArgument, "truncation K must be at least 2");
  const Point xr{x[0] - 2.0 * std::round(x[0] / 2.0), x[1] - 2.0 * std::round(x[1] / 2.0)};
  const double d = gamma.project(xr).distance;
  if (static_cast<double>(K) < 8.0 / d) {
    throw Error(ErrorKind::Geometry, "probe at distance " + std::to_string(d) + " needs K >= " +
                                         std::to_string(8.0 / d) + " modes per axis");
  }
  std::vector<CurveGamma::Node> nodes;
  if (!gamma.is_circle()) {
    const auto panels = static_cast<std::size_t>(std::ceil(gamma.length() * K / 4.0)) + 16;
    nodes = gamma.quadrature(panels);
  }
  const int half = K / 2;
  double full = 0.0, coarse = 0.0;
  std::size_t modes = 0;
  for (int k1 = -K; k1 <= K; ++k1) {
    for (int k2 = -K; k2 <= K; ++k2) {
      const int r2 = k1 * k1 + k2 * k2;
      if (r2 == 0 || r2 > K * K) continue;
      cd mu;
      if (gamma.is_circle()) {
        mu = circle_measure_coefficient(gamma.center(), gamma.radius(), k1, k2);
      } else {
        cd s = 0.0;
        for (const auto& nd : nodes) s += nd.weight * std::polar(1.0, -kPi * (k1 * nd.y[0] + k2 * nd.y[1]));
        mu = 0.25 * s;
      }
      const double term = (frac_smoothing_multiplier(k1, k2, p.epsilon) * mu *
                           std::polar(1.0, kPi * (k1 * x[0] + k2 * x[1])))
                              .real();
      full += term * std::pow(1.0 - static_cast<double>(r2) / (static_cast<double>(K) * K), riesz_order);
      if (r2 <= half * half) {
        coarse += term * std::pow(1.0 - static_cast<double>(r2) / (static_cast<double>(half) * half), riesz_order);
      }
      ++modes;
    }
  }
  return {full, std::abs(full - coarse), modes};
}

// --- Beta criterion ---

double beta_condition_value(double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) throw Error(ErrorKind::InvalidArgument, "beta criterion needs eps in [0,1)");
  return 1.5 * boost::math::beta(0.5, (3.0 - eps) / 2.0) - 0.5 * boost::math::beta(0.5, (1.0 - eps) / 2.0);
}

double beta_condition(const FracParams& p) { return beta_condition_value(p.epsilon); }

double beta_condition_quadrature(double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) throw Error(ErrorKind::InvalidArgument, "beta criterion needs eps in [0,1)");
  boost::math::quadrature::tanh_sinh<double> ts;
  // int_0^inf (1+y^2)^-q = int_0^1 (1+y^2)^-q dy + int_0^1 t^(2q-2) (1+t^2)^-q dt
  auto half_line = [&](double q) {
    const double inner = ts.integrate([q](double y) { return std::pow(1.0 + y * y, -q); }, 0.0, 1.0);
    const double outer = ts.integrate(
        [q](double t) { return std::pow(t, 2.0 * q - 2.0) * std::pow(1.0 + t * t, -q); }, 0.0, 1.0);
    return inner + outer;
  };
  return 3.0 * half_line((4.0 - eps) / 2.0) - half_line((2.0 - eps) / 2.0);
}

}  // namespace fracpm
