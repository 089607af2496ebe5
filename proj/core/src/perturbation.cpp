#include "fracpm/perturbation.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "fracpm/error.hpp"
#include "fracpm/field_io.hpp"

namespace fracpm {

ScalarField make_perturbation(const PerturbationSpec& spec, const PeriodicGrid& grid, const JumpSet& js,
                              double delta, std::uint64_t seed) {
  constexpr double pi = std::numbers::pi;
  std::vector<double> w(grid.size(), 0.0);
  switch (spec.kind) {
    case PerturbationKind::Zero:
      return ScalarField(grid);
    case PerturbationKind::Sine:
      for (std::size_t i = 0; i < w.size(); ++i) {
        const auto x = grid.node(i);
        const double r2 = x[0] * x[0] + (grid.dim() == 2 ? x[1] * x[1] : 0.0);
        w[i] = std::sin(64.0 * pi * r2);
      }
      break;
    case PerturbationKind::Mode:
      for (std::size_t i = 0; i < w.size(); ++i) {
        const auto x = grid.node(i);
        double v = std::sin(pi * spec.wavenumber * (x[0] - spec.center[0]));
        if (grid.dim() == 2) v *= std::sin(pi * spec.wavenumber * (x[1] - spec.center[1]));
        w[i] = v;
      }
      break;
    case PerturbationKind::Noise: {
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> uni(-1.0, 1.0);
      for (auto& v : w) v = uni(rng);
      break;
    }
    case PerturbationKind::File: {
      const auto loaded = read_field(spec.file);
      if (!(loaded.field.grid() == grid)) {
        throw Error(ErrorKind::Config, "perturbation file grid does not match the run grid");
      }
      w.assign(loaded.field.values().begin(), loaded.field.values().end());
      break;
    }
  }
  if (spec.taper) {
    const WeightField d(grid, js, delta);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] *= d.values()[i];
  }
  for (auto& v : w) v *= spec.amplitude;
  return ScalarField(grid, std::move(w));
}

}  // namespace fracpm
