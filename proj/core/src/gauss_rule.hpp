#pragma once

#include <array>
#include <boost/math/quadrature/gauss.hpp>

namespace fracpm::detail {

/// 16-point Gauss-Legendre rule on [-1,1], unfolded from Boost's half table.
struct GaussRule16 {
  std::array<double, 16> x;
  std::array<double, 16> w;
};

inline const GaussRule16& gauss16() {
  static const GaussRule16 rule = [] {
    using G = boost::math::quadrature::gauss<double, 16>;
    GaussRule16 r{};
    const auto& a = G::abscissa();
    const auto& w = G::weights();
    for (std::size_t i = 0; i < a.size(); ++i) {
      r.x[7 - i] = -a[i];
      r.w[7 - i] = w[i];
      r.x[8 + i] = a[i];
      r.w[8 + i] = w[i];
    }
    return r;
  }();
  return rule;
}

}  // namespace fracpm::detail
