#pragma once

#include <cstdint>

#include "fracpm/config.hpp"
#include "fracpm/geometry.hpp"
#include "fracpm/grid.hpp"

namespace fracpm {

/// Initial perturbation w0 on the grid. `js` is the (aligned) jump set used for
/// tapering by the capped distance with tube radius `delta`.
///   sine:  A sin(64 pi |x|^2)
///   mode:  A prod_axes sin(pi m (x_i - c_i))
///   noise: A * uniform(-1,1) per node, from `seed`
///   file:  A * samples of a field file on the same grid
///   zero:  0
[[nodiscard]] ScalarField make_perturbation(const PerturbationSpec& spec, const PeriodicGrid& grid,
                                            const JumpSet& js, double delta, std::uint64_t seed);

}  // namespace fracpm
