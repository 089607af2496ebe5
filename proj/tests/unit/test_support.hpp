#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "fracpm/grid.hpp"

namespace fracpm::testing {

inline constexpr double kPi = std::numbers::pi;

/// c(k) = n^-dim sum_j f_j exp(-i pi k.x_j), by direct summation in long double.
inline SpectralCoeffs direct_dft(const ScalarField& f) {
  const auto& g = f.grid();
  SpectralCoeffs c(g);
  const auto n = static_cast<long double>(g.size());
  auto sum_at = [&](int k1, int k2) {
    long double re = 0, im = 0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      const auto x = g.node(j);
      const long double ph = -std::numbers::pi_v<long double> *
                             (static_cast<long double>(k1) * x[0] + static_cast<long double>(k2) * x[1]);
      re += f[j] * std::cos(ph);
      im += f[j] * std::sin(ph);
    }
    return std::complex<double>(static_cast<double>(re / n), static_cast<double>(im / n));
  };
  const int h = static_cast<int>(g.n() / 2);
  if (g.dim() == 1) {
    for (int k = -h; k < h; ++k) c.set(k, sum_at(k, 0));
  } else {
    for (int k1 = -h; k1 < h; ++k1)
      for (int k2 = -h; k2 < h; ++k2) c.set(k1, k2, sum_at(k1, k2));
  }
  return c;
}

inline ScalarField random_field(const PeriodicGrid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(g.size());
  for (auto& x : v) x = u(rng);
  return ScalarField(g, std::move(v));
}

/// Real 1D trigonometric polynomial with `modes` random wavenumbers in [1, kmax].
inline SpectralCoeffs random_modes(const PeriodicGrid& g, int modes, int kmax, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> pick(1, kmax);
  SpectralCoeffs c(g);
  int placed = 0;
  while (placed < modes) {
    const int k = pick(rng);
    if (c.at(k) != std::complex<double>{}) continue;
    const std::complex<double> z(u(rng) / modes, u(rng) / modes);
    c.set(k, z);
    c.set(-k, std::conj(z));
    ++placed;
  }
  return c;
}

inline double max_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("fracpm-test-" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace fracpm::testing
