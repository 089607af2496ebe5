#include "fracpm/clausen.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "fracpm/error.hpp"

namespace fracpm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxSeries = 60;
constexpr int kMaxTailOrder = 12;

}  // namespace

double fold_period_two(double x) noexcept {
  double r = std::fmod(std::abs(x), 2.0);
  if (r > 1.0) r = 2.0 - r;
  return r;
}

ClausenEvaluator::ClausenEvaluator(double epsilon, ClausenScheme scheme, std::size_t terms,
                                   double tolerance)
    : eps_(epsilon), scheme_(scheme), terms_(terms), tol_(tolerance) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "epsilon must lie in (0,1)");
  }
  if (terms == 0 || !(tolerance > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "Clausen evaluator needs terms > 0 and tolerance > 0");
  }
  sing_coeff_ = 2.0 * boost::math::tgamma(1.0 - eps_) * std::sin(kPi * eps_ / 2.0) *
                std::pow(kPi, eps_ - 1.0);
  // (pi x)^2m / (2m)! accumulated as a running product keeps every factor in range.
  double scale = 1.0;
  for (int m = 0; m < kMaxSeries; ++m) {
    if (m > 0) scale *= -kPi * kPi / ((2.0 * m - 1.0) * (2.0 * m));
    coeff_.push_back(2.0 * boost::math::zeta(eps_ - 2.0 * m) * scale);
  }
}

double ClausenEvaluator::operator()(double x) const {
  if (!std::isfinite(x)) throw Error(ErrorKind::NonFinite, "non-finite Clausen argument");
  const double r = fold_period_two(x);
  if (r == 0.0) throw Error(ErrorKind::InvalidArgument, "G_eps is singular at x = 0 mod 2");
  return scheme_ == ClausenScheme::ZetaSeries ? zeta_series(r) : partial_sum_tail(r);
}

double ClausenEvaluator::zeta_series(double r) const {
  const double r2 = r * r;
  double sum = 0.0;
  double pw = 1.0;
  for (double c : coeff_) {
    const double term = c * pw;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    pw *= r2;
  }
  return sing_coeff_ * std::pow(r, eps_ - 1.0) + sum;
}

double ClausenEvaluator::derivative(double x) const {
  if (scheme_ != ClausenScheme::ZetaSeries) {
    throw Error(ErrorKind::InvalidArgument, "derivative only available for the zeta-series scheme");
  }
  if (!std::isfinite(x)) throw Error(ErrorKind::NonFinite, "non-finite Clausen argument");
  // G is even and 2-periodic; track the sign of the fold.
  double r = std::fmod(std::abs(x), 2.0);
  double sign = x < 0.0 ? -1.0 : 1.0;
  if (r > 1.0) {
    r = 2.0 - r;
    sign = -sign;
  }
  if (r == 0.0) throw Error(ErrorKind::InvalidArgument, "G_eps is singular at x = 0 mod 2");
  double sum = 0.0;
  double pw = r;  // d/dr r^2m = 2m r^(2m-1)
  for (std::size_t m = 1; m < coeff_.size(); ++m) {
    const double term = coeff_[m] * 2.0 * static_cast<double>(m) * pw;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    pw *= r * r;
  }
  return sign * (sing_coeff_ * (eps_ - 1.0) * std::pow(r, eps_ - 2.0) + sum);
}

double ClausenEvaluator::partial_sum_tail(double r) const {
  using ld = long double;
  const ld theta = static_cast<ld>(kPi) * r;
  ld head = 0.0L;
  for (std::size_t k = 1; k < terms_; ++k) {
    head += std::cos(theta * static_cast<ld>(k)) / std::pow(static_cast<ld>(k), static_cast<ld>(eps_));
  }
  // sum_{k>=N} z^k f(k) = sum_j z^(N+j) (nabla^j f)(N+j) / (1-z)^(j+1), nabla f(k) = f(k) - f(k-1).
  const auto n0 = static_cast<ld>(terms_);
  const std::complex<ld> z(std::cos(theta), std::sin(theta));
  const std::complex<ld> inv = 1.0L / (1.0L - z);
  std::complex<ld> tail = 0.0L;
  std::complex<ld> zpow = std::pow(z, n0) * inv;
  // The expansion is asymptotic: stop at the smallest term.
  ld last = std::numeric_limits<ld>::infinity();
  for (int j = 0; j < kMaxTailOrder; ++j) {
    ld diff = 0.0L;
    ld binom = 1.0L;
    for (int i = 0; i <= j; ++i) {
      diff += (i % 2 == 0 ? 1.0L : -1.0L) * binom * std::pow(n0 + j - i, -static_cast<ld>(eps_));
      binom = binom * (j - i) / (i + 1);
    }
    const std::complex<ld> term = zpow * diff;
    const ld size = std::abs(term);
    if (size >= last) break;
    tail += term;
    last = size;
    if (2.0L * last < tol_) break;
    zpow *= z * inv;
  }
  if (2.0L * last >= tol_) {
    throw Error(ErrorKind::Tolerance,
                "partial-sum tail does not reach tolerance at x = " + std::to_string(r) +
                    " with " + std::to_string(terms_) + " terms");
  }
  return static_cast<double>(2.0L * (head + tail.real()));
}

double clausen_G(double x, const FracParams& p) {
  const ClausenEvaluator g(p.epsilon);
  return g(x);
}

}  // namespace fracpm
