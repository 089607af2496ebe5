#include "fracpm/spectral.hpp"

#include <cmath>
#include <numbers>

#include "fracpm/error.hpp"

namespace fracpm {

namespace {

using cd = std::complex<double>;

void require_same_grid(const ScalarField& a, const ScalarField& b) {
  if (!(a.grid() == b.grid())) throw Error(ErrorKind::InvalidArgument, "fields live on different grids");
}

void require_dim(const PeriodicGrid& g, int dim, const char* op) {
  if (g.dim() != dim) {
    throw Error(ErrorKind::InvalidArgument,
                std::string(op) + " requires a " + std::to_string(dim) + "D grid");
  }
}

}  // namespace

SpectralCoeffs dft_forward(const ScalarField& f) {
  FftPlan plan(f.grid());
  SpectralCoeffs c(f.grid());
  plan.forward(f.values(), c.coeffs());
  return c;
}

ScalarField dft_inverse(const SpectralCoeffs& c) {
  for (const auto& z : c.coeffs()) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorKind::NonFinite, "non-finite Fourier coefficient");
    }
  }
  FftPlan plan(c.grid());
  std::vector<double> v(c.grid().size());
  plan.inverse(c.coeffs(), std::span<double>(v));
  return ScalarField(c.grid(), std::move(v));
}

std::complex<double> frac_derivative_multiplier(int k, double eps) {
  if (k == 0) return {0.0, 0.0};
  const double kk = static_cast<double>(k);
  return {0.0, std::numbers::pi * kk / std::pow(std::abs(kk), eps)};
}

double frac_smoothing_multiplier(int k1, int k2, double eps) {
  if (k1 == 0 && k2 == 0) return 0.0;
  const double r2 = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
  return std::pow(r2, -0.5 * eps);
}

ScalarField frac_derivative_1d(const ScalarField& u, const FracParams& p) {
  require_dim(u.grid(), 1, "frac_derivative_1d");
  SpectralWorkspace ws(u.grid());
  std::vector<double> out(u.size());
  ws.frac_field(u.values(), p.epsilon, out);
  return ScalarField(u.grid(), std::move(out));
}

ScalarField frac_smoothing_2d(const ScalarField& g, const FracParams& p) {
  require_dim(g.grid(), 2, "frac_smoothing_2d");
  const auto& grid = g.grid();
  std::vector<double> symbol(grid.size());
  const auto n = grid.n();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      symbol[a * n + b] = frac_smoothing_multiplier(grid.wavenumber(a), grid.wavenumber(b), p.epsilon);
  SpectralWorkspace ws(grid);
  std::vector<double> out(g.size());
  ws.apply_symbol(g.values(), symbol, out);
  return ScalarField(grid, std::move(out));
}

ScalarField frac_gradient_2d(const ScalarField& u, const FracParams& p) {
  require_dim(u.grid(), 2, "frac_gradient_2d");
  SpectralWorkspace ws(u.grid());
  std::vector<double> out(u.size());
  ws.frac_field(u.values(), p.epsilon, out);
  return ScalarField(u.grid(), std::move(out));
}

ScalarField frac_field(const ScalarField& u, const FracParams& p) {
  return u.grid().dim() == 1 ? frac_derivative_1d(u, p) : frac_gradient_2d(u, p);
}

std::vector<ScalarField> gradient(const ScalarField& u) {
  SpectralWorkspace ws(u.grid());
  const auto size = u.size();
  std::vector<double> gx(size), gy(u.grid().dim() == 2 ? size : 0);
  ws.gradient(u.values(), gx, gy);
  std::vector<ScalarField> out;
  out.emplace_back(u.grid(), std::move(gx));
  if (u.grid().dim() == 2) out.emplace_back(u.grid(), std::move(gy));
  return out;
}

ScalarField divergence(std::span<const ScalarField> components) {
  if (components.empty()) throw Error(ErrorKind::InvalidArgument, "divergence of an empty vector field");
  const auto& grid = components[0].grid();
  if (components.size() != static_cast<std::size_t>(grid.dim())) {
    throw Error(ErrorKind::InvalidArgument, "divergence needs one component per axis");
  }
  SpectralWorkspace ws(grid);
  std::vector<double> acc(grid.size(), 0.0), tmp(grid.size());
  for (int axis = 0; axis < grid.dim(); ++axis) {
    require_same_grid(components[0], components[axis]);
    ws.derivative(components[axis].values(), axis, tmp);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += tmp[i];
  }
  return ScalarField(grid, std::move(acc));
}

ScalarField laplacian(const ScalarField& u) {
  SpectralWorkspace ws(u.grid());
  std::vector<double> symbol(ws.neg_laplacian_symbol().begin(), ws.neg_laplacian_symbol().end());
  for (auto& s : symbol) s = -s;
  std::vector<double> out(u.size());
  ws.apply_symbol(u.values(), symbol, out);
  return ScalarField(u.grid(), std::move(out));
}

ScalarField gradient_magnitude(const ScalarField& u) {
  auto g = gradient(u);
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    double s = 0.0;
    for (const auto& c : g) s += c[i] * c[i];
    out[i] = std::sqrt(s);
  }
  return ScalarField(u.grid(), std::move(out));
}

ScalarField alpha_from_fracfield(const ScalarField& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 1.0 / (1.0 + v[i] * v[i]);
  return ScalarField(v.grid(), std::move(out));
}

ScalarField pm_divergence_form(const ScalarField& w, const ScalarField& alpha) {
  require_same_grid(w, alpha);
  for (double a : alpha.values()) {
    if (!(a > 0.0)) throw Error(ErrorKind::InvalidArgument, "diffusion coefficient must be positive");
  }
  SpectralWorkspace ws(w.grid());
  std::vector<double> out(w.size());
  ws.div_alpha_grad(alpha.values(), w.values(), out);
  return ScalarField(w.grid(), std::move(out));
}

// --- workspace ---

SpectralWorkspace::SpectralWorkspace(const PeriodicGrid& grid)
    : grid_(grid),
      plan_(grid),
      dk_(grid.n()),
      neg_lap_(grid.size()),
      a_(grid.size()),
      b_(grid.size()),
      r0_(grid.size()),
      r1_(grid.size()) {
  const auto n = grid.n();
  const int nyquist = -static_cast<int>(n / 2);
  for (std::size_t j = 0; j < n; ++j) {
    const int k = grid.wavenumber(j);
    dk_[j] = k == nyquist ? 0.0 : std::numbers::pi * k;
  }
  if (grid.dim() == 1) {
    for (std::size_t j = 0; j < n; ++j) neg_lap_[j] = dk_[j] * dk_[j];
  } else {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) neg_lap_[a * n + b] = dk_[a] * dk_[a] + dk_[b] * dk_[b];
  }
}

void SpectralWorkspace::derivative(std::span<const double> u, int axis, std::span<double> out) {
  plan_.forward(u, a_);
  const auto n = grid_.n();
  if (grid_.dim() == 1) {
    for (std::size_t j = 0; j < n; ++j) a_[j] *= cd(0.0, dk_[j]);
  } else {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) a_[a * n + b] *= cd(0.0, axis == 0 ? dk_[a] : dk_[b]);
  }
  plan_.inverse(a_, out);
}

void SpectralWorkspace::gradient(std::span<const double> u, std::span<double> gx, std::span<double> gy) {
  if (grid_.dim() == 1) {
    derivative(u, 0, gx);
    return;
  }
  plan_.forward(u, a_);
  const auto n = grid_.n();
  // gx + i*gy in one inverse: both outputs are exactly real.
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) a_[a * n + b] *= cd(-dk_[b], dk_[a]);
  plan_.inverse(std::span<const cd>(a_), std::span<cd>(b_));
  for (std::size_t i = 0; i < b_.size(); ++i) {
    gx[i] = b_[i].real();
    gy[i] = b_[i].imag();
  }
}

void SpectralWorkspace::div_alpha_grad(std::span<const double> alpha, std::span<const double> w,
                                       std::span<double> out) {
  const auto n = grid_.n();
  if (grid_.dim() == 1) {
    derivative(w, 0, r0_);
    for (std::size_t i = 0; i < n; ++i) r0_[i] *= alpha[i];
    derivative(r0_, 0, out);
    return;
  }
  gradient(w, r0_, r1_);
  for (std::size_t i = 0; i < b_.size(); ++i) b_[i] = cd(alpha[i] * r0_[i], alpha[i] * r1_[i]);
  plan_.forward(std::span<const cd>(b_), std::span<cd>(a_));
  // Split the packed transform Z = F1 + i F2 and form i d1 F1 + i d2 F2.
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t ma = (n - a) % n;
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t mb = (n - b) % n;
      const cd z = a_[a * n + b];
      const cd zc = std::conj(a_[ma * n + mb]);
      const cd f1 = 0.5 * (z + zc);
      const cd f2 = cd(0.0, -0.5) * (z - zc);
      b_[a * n + b] = cd(0.0, 1.0) * (dk_[a] * f1 + dk_[b] * f2);
    }
  }
  plan_.inverse(std::span<const cd>(b_), out);
}

void SpectralWorkspace::apply_symbol(std::span<const double> u, std::span<const double> symbol,
                                     std::span<double> out) {
  plan_.forward(u, a_);
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] *= symbol[i];
  plan_.inverse(a_, out);
}

const std::vector<std::complex<double>>& SpectralWorkspace::frac_symbol(double eps) {
  auto it = frac_cache_.find(eps);
  if (it != frac_cache_.end()) return it->second;
  std::vector<cd> s(grid_.size());
  const auto n = grid_.n();
  if (grid_.dim() == 1) {
    for (std::size_t j = 0; j < n; ++j) s[j] = frac_derivative_multiplier(grid_.wavenumber(j), eps);
  } else {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        s[a * n + b] = frac_smoothing_multiplier(grid_.wavenumber(a), grid_.wavenumber(b), eps);
  }
  return frac_cache_.emplace(eps, std::move(s)).first->second;
}

void SpectralWorkspace::frac_field(std::span<const double> u, double eps, std::span<double> out) {
  const auto& sym = frac_symbol(eps);
  if (grid_.dim() == 1) {
    plan_.forward(u, a_);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] *= sym[i];
    plan_.inverse(a_, out);
    return;
  }
  gradient(u, r0_, r1_);
  for (std::size_t i = 0; i < r0_.size(); ++i) r0_[i] = std::hypot(r0_[i], r1_[i]);
  plan_.forward(r0_, a_);
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] *= sym[i];
  plan_.inverse(a_, out);
}

}  // namespace fracpm
