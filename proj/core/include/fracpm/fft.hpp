#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "fracpm/grid.hpp"

namespace fracpm {

/// Forward/inverse transform pair for one grid, in the project's Fourier
/// convention (see SpectralCoeffs). Each instance owns its work buffers, so
/// distinct instances may be used from distinct threads. Planning goes
/// through a process-wide cache behind a mutex.
class FftPlan {
 public:
  explicit FftPlan(const PeriodicGrid& grid);
  ~FftPlan();
  FftPlan(FftPlan&&) noexcept;
  FftPlan& operator=(FftPlan&&) noexcept;
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  [[nodiscard]] const PeriodicGrid& grid() const noexcept;

  void forward(std::span<const double> in, std::span<std::complex<double>> out);
  void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);
  /// Real part of the inverse transform.
  void inverse(std::span<const std::complex<double>> in, std::span<double> out);
  void inverse(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace fracpm
