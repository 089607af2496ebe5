#include "fracpm/riesz_kernel.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

#include "fracpm/error.hpp"

namespace fracpm {

namespace {
constexpr double kPi = std::numbers::pi;
// exp(-40) ~ 4e-18: beyond this argument both incomplete-Gamma tails are dropped.
constexpr double kTailArg = 40.0;
}  // namespace

RieszKernel2D::RieszKernel2D(double epsilon, double tau) : eps_(epsilon), tau_(tau) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(ErrorKind::InvalidArgument, "epsilon must lie in (0,1)");
  if (!(tau > 0.0)) throw Error(ErrorKind::InvalidArgument, "Ewald parameter must be positive");
  kmax_ = static_cast<int>(std::ceil(std::sqrt(kTailArg / tau_ + 8.0 / tau_)));
  rcut_ = std::sqrt(4.0 * tau_ * kTailArg) / kPi;
  const double s = 0.5 * eps_;
  img_coeff_ = kPi * boost::math::tgamma(1.0 - s) / boost::math::tgamma(s) * std::pow(kPi / 2.0, eps_ - 2.0);
  const_ = -2.0 * std::pow(tau_, s) / (eps_ * boost::math::tgamma(s));
}

double RieszKernel2D::long_symbol(int k1, int k2) const {
  if (k1 == 0 && k2 == 0) return 0.0;
  const double r2 = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
  const double arg = tau_ * r2;
  if (arg > kTailArg + 8.0) return 0.0;
  return std::pow(r2, -0.5 * eps_) * boost::math::gamma_q(0.5 * eps_, arg);
}

double RieszKernel2D::image_term(double r) const {
  if (r >= rcut_) return 0.0;
  if (!(r > 0.0)) throw Error(ErrorKind::Geometry, "Riesz kernel evaluated on its singularity");
  const double a = kPi * kPi * r * r / 4.0;
  return img_coeff_ * std::pow(r, eps_ - 2.0) * boost::math::gamma_q(1.0 - 0.5 * eps_, a / tau_);
}

double RieszKernel2D::short_range(const Point& z) const {
  const double z0 = z[0] - 2.0 * std::round(z[0] / 2.0);
  const double z1 = z[1] - 2.0 * std::round(z[1] / 2.0);
  double sum = 0.0;
  for (int m0 = -1; m0 <= 1; ++m0)
    for (int m1 = -1; m1 <= 1; ++m1) sum += image_term(std::hypot(z0 + 2.0 * m0, z1 + 2.0 * m1));
  return sum;
}

double RieszKernel2D::operator()(const Point& z) const {
  double lr = 0.0;
  for (int k1 = -kmax_; k1 <= kmax_; ++k1) {
    for (int k2 = -kmax_; k2 <= kmax_; ++k2) {
      const double w = long_symbol(k1, k2);
      if (w != 0.0) lr += w * std::cos(kPi * (k1 * z[0] + k2 * z[1]));
    }
  }
  return lr + short_range(z) + const_;
}

}  // namespace fracpm
