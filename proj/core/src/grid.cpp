#include "fracpm/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fracpm/error.hpp"

namespace fracpm {

namespace {

void require_finite(std::span<const double> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw Error(ErrorKind::NonFinite, "non-finite field value at node " + std::to_string(i));
    }
  }
}

}  // namespace

PeriodicGrid::PeriodicGrid(int dim, std::size_t n) : dim_(dim), n_(n) {
  if (dim != 1 && dim != 2) {
    throw Error(ErrorKind::InvalidArgument, "grid dimension must be 1 or 2");
  }
  if (n < 8 || (n & (n - 1)) != 0) {
    throw Error(ErrorKind::InvalidArgument,
                "points per axis must be a power of two >= 8, got " + std::to_string(n));
  }
}

Point PeriodicGrid::node(std::size_t flat) const noexcept {
  if (dim_ == 1) return {coord(flat), 0.0};
  return {coord(flat / n_), coord(flat % n_)};
}

std::size_t PeriodicGrid::slot(int k) const {
  const auto half = static_cast<int>(n_ / 2);
  if (k < -half || k >= half) {
    throw Error(ErrorKind::InvalidArgument, "wavenumber outside the grid index set");
  }
  return k >= 0 ? static_cast<std::size_t>(k) : static_cast<std::size_t>(k + static_cast<int>(n_));
}

ScalarField::ScalarField(const PeriodicGrid& grid) : grid_(grid), values_(grid.size(), 0.0) {}

ScalarField::ScalarField(const PeriodicGrid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw Error(ErrorKind::InvalidArgument, "field length does not match grid node count");
  }
  require_finite(values_);
}

double ScalarField::mean() const noexcept {
  return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

double ScalarField::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double ScalarField::l2_norm() const noexcept {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return std::sqrt(s * std::pow(grid_.spacing(), grid_.dim()));
}

SpectralCoeffs::SpectralCoeffs(const PeriodicGrid& grid) : grid_(grid), coeffs_(grid.size()) {}

SpectralCoeffs::SpectralCoeffs(const PeriodicGrid& grid, std::vector<std::complex<double>> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.size()) {
    throw Error(ErrorKind::InvalidArgument, "coefficient length does not match grid");
  }
}

std::complex<double> SpectralCoeffs::at(int k) const {
  if (grid_.dim() != 1) throw Error(ErrorKind::InvalidArgument, "1D index on a 2D grid");
  return coeffs_[grid_.slot(k)];
}

std::complex<double> SpectralCoeffs::at(int k1, int k2) const {
  if (grid_.dim() != 2) throw Error(ErrorKind::InvalidArgument, "2D index on a 1D grid");
  return coeffs_[grid_.slot(k1) * grid_.n() + grid_.slot(k2)];
}

void SpectralCoeffs::set(int k, std::complex<double> value) {
  if (grid_.dim() != 1) throw Error(ErrorKind::InvalidArgument, "1D index on a 2D grid");
  coeffs_[grid_.slot(k)] = value;
}

void SpectralCoeffs::set(int k1, int k2, std::complex<double> value) {
  if (grid_.dim() != 2) throw Error(ErrorKind::InvalidArgument, "2D index on a 1D grid");
  coeffs_[grid_.slot(k1) * grid_.n() + grid_.slot(k2)] = value;
}

FracParams::FracParams(double eps, bool exclude_half_) : epsilon(eps), exclude_half(exclude_half_) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "epsilon must lie in (0,1)");
  }
}

void FracParams::require_not_half() const {
  if (exclude_half && epsilon == 0.5) {
    throw Error(ErrorKind::ExcludedParameter,
                "eps = 1/2 is the degenerate case of the curvature sign criterion; "
                "the sign-definite Laplacian estimate does not hold there");
  }
}

}  // namespace fracpm
