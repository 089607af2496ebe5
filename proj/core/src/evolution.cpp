#include "fracpm/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fracpm/singular_field.hpp"

namespace fracpm {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

bool all_finite(std::span<const double> a) {
  return std::all_of(a.begin(), a.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::Config, "solver.dt must be positive");
  if (!(T > 0.0) || !std::isfinite(T)) throw Error(ErrorKind::Config, "solver.T must be positive");
  if (!(tolerance > 0.0) || tolerance > 1e-6) {
    throw Error(ErrorKind::Config, "solver.tolerance must lie in (0, 1e-6]");
  }
  if (max_iterations == 0) throw Error(ErrorKind::Config, "solver.max_iterations must be positive");
}

std::size_t SolverConfig::steps() const {
  return static_cast<std::size_t>(std::max(1.0, std::round(T / dt)));
}

SingularSample precompute_singular_field(const JumpSet& js, const FracParams& p, const PeriodicGrid& grid) {
  auto aligned = align_to_grid(js, grid);
  const SingularField field(aligned.js, p);
  auto values = field.sample(grid);
  return {ScalarField(grid, std::move(values)), std::move(aligned.js), aligned.shifted, aligned.message};
}

Stepper::Stepper(ScalarField S, const FracParams& p, SolverConfig cfg)
    : S_(std::move(S)), eps_(p.epsilon), cfg_(cfg), ws_(S_.grid()) {
  cfg_.validate();
  const auto n = S_.size();
  for (auto* v : {&alpha_, &v_, &r_, &z_, &p_, &q_, &precond_, &gx_, &gy_}) v->assign(n, 0.0);
}

void Stepper::coefficient(std::span<const double> w, std::span<double> alpha) {
  ws_.frac_field(w, eps_, v_);
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const double s = S_[i] + v_[i];
    alpha[i] = std::max(1.0 / (1.0 + s * s), kAlphaFloor);
  }
}

void Stepper::apply(std::span<const double> alpha, std::span<const double> x, std::span<double> out) {
  // out = x - dt div(alpha grad x)
  ws_.div_alpha_grad(alpha, x, out);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] - cfg_.dt * out[i];
}

StepStats Stepper::advance(std::vector<double>& w) {
  coefficient(w, alpha_);
  return solve_frozen(w);
}

StepStats Stepper::advance_with(std::vector<double>& w, std::span<const double> alpha) {
  if (alpha.size() != alpha_.size() || w.size() != alpha_.size()) {
    throw Error(ErrorKind::InvalidArgument, "coefficient and state must match the grid");
  }
  if (!std::all_of(alpha.begin(), alpha.end(), [](double a) { return a > 0.0 && std::isfinite(a); })) {
    throw Error(ErrorKind::InvalidArgument, "frozen coefficient must be positive");
  }
  std::copy(alpha.begin(), alpha.end(), alpha_.begin());
  return solve_frozen(w);
}

StepStats Stepper::solve_frozen(std::vector<double>& w) {
  const auto n = w.size();
  if (cfg_.scheme == Scheme::Explicit) {
    ws_.div_alpha_grad(alpha_, w, q_);
    for (std::size_t i = 0; i < n; ++i) w[i] += cfg_.dt * q_[i];
    return {0, 0.0};
  }

  const double bnorm = std::sqrt(dot(w, w));
  if (bnorm == 0.0) return {0, 0.0};

  const double cbar = std::accumulate(alpha_.begin(), alpha_.end(), 0.0) / static_cast<double>(n);
  const auto lap = ws_.neg_laplacian_symbol();
  for (std::size_t i = 0; i < n; ++i) precond_[i] = 1.0 / (1.0 + cfg_.dt * cbar * lap[i]);

  // Preconditioned CG on (I - dt div(alpha grad .)) x = b with b = w, x0 = w.
  const std::vector<double> b = w;
  apply(alpha_, w, q_);
  for (std::size_t i = 0; i < n; ++i) r_[i] = b[i] - q_[i];
  ws_.apply_symbol(r_, precond_, z_);
  p_ = z_;
  double rz = dot(r_, z_);
  double rnorm = std::sqrt(dot(r_, r_));
  std::size_t it = 0;
  while (rnorm > cfg_.tolerance * bnorm) {
    if (it == cfg_.max_iterations) {
      const double amin = *std::min_element(alpha_.begin(), alpha_.end());
      std::ostringstream msg;
      msg << "linear solve did not converge in " << it << " iterations (relative residual " << rnorm / bnorm
          << ", alpha range [" << amin << ", 1], mean " << cbar << ", dt*max symbol "
          << cfg_.dt * *std::max_element(lap.begin(), lap.end()) << ")";
      throw Error(ErrorKind::LinearAlgebra, msg.str());
    }
    apply(alpha_, p_, q_);
    const double pq = dot(p_, q_);
    if (!(pq > 0.0)) throw Error(ErrorKind::LinearAlgebra, "semi-implicit operator lost positive definiteness");
    const double a = rz / pq;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] += a * p_[i];
      r_[i] -= a * q_[i];
    }
    ws_.apply_symbol(r_, precond_, z_);
    const double rz_new = dot(r_, z_);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i) p_[i] = z_[i] + beta * p_[i];
    rnorm = std::sqrt(dot(r_, r_));
    ++it;
  }
  return {it, rnorm / bnorm};
}

double Stepper::energy(std::span<const double> w, std::span<const double> alpha) {
  ws_.gradient(w, gx_, gy_);
  double s = 0.0;
  const bool two = grid().dim() == 2;
  for (std::size_t i = 0; i < w.size(); ++i) {
    double g2 = gx_[i] * gx_[i];
    if (two) g2 += gy_[i] * gy_[i];
    s += alpha[i] * g2;
  }
  return s * std::pow(grid().spacing(), grid().dim());
}

ScalarField step(const ScalarField& w, const ScalarField& S, const FracParams& p, const SolverConfig& cfg) {
  if (!(w.grid() == S.grid())) throw Error(ErrorKind::InvalidArgument, "w and S live on different grids");
  Stepper st(S, p, cfg);
  std::vector<double> v(w.values().begin(), w.values().end());
  st.advance(v);
  return ScalarField(w.grid(), std::move(v));
}

Trajectory evolve(const ScalarField& w0, const JumpSet& js, const FracParams& p, const SolverConfig& cfg) {
  return evolve(w0, precompute_singular_field(js, p, w0.grid()), p, cfg);
}

Trajectory evolve(const ScalarField& w0, const SingularSample& S, const FracParams& p, const SolverConfig& cfg) {
  cfg.validate();
  const auto& grid = w0.grid();
  if (!(grid == S.S.grid())) throw Error(ErrorKind::InvalidArgument, "w0 and S live on different grids");
  Stepper st(S.S, p, cfg);
  const auto n = grid.size();
  std::vector<double> H(n);
  for (std::size_t i = 0; i < n; ++i) H[i] = S.js.step_value(grid.node(i));

  Trajectory tr;
  tr.js = S.js;
  tr.shifted = S.shifted;
  tr.warning = S.warning;
  std::vector<double> w(w0.values().begin(), w0.values().end());
  std::vector<double> alpha(n), u(n);
  const double cell = std::pow(grid.spacing(), grid.dim());

  auto record = [&](double t, std::size_t iters) {
    st.coefficient(w, alpha);
    for (std::size_t i = 0; i < n; ++i) u[i] = H[i] + w[i];
    tr.times.push_back(t);
    tr.l2_w.push_back(std::sqrt(dot(w, w) * cell));
    tr.linf_u.push_back(max_abs(u));
    tr.mean_u.push_back(std::accumulate(u.begin(), u.end(), 0.0) / static_cast<double>(n));
    tr.energy.push_back(st.energy(w, alpha));
    tr.iterations.push_back(iters);
  };
  auto snapshot = [&](double t) {
    tr.snapshot_times.push_back(t);
    tr.snapshots.emplace_back(grid, w);
  };

  record(0.0, 0);
  snapshot(0.0);
  const std::size_t steps = cfg.steps();
  const double w0max = max_abs(w);
  for (std::size_t k = 1; k <= steps; ++k) {
    const double before = max_abs(w);
    const auto last_good = w;
    StepStats stats;
    try {
      stats = st.advance(w);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::LinearAlgebra) throw;
      throw EvolutionAborted(std::string("step ") + std::to_string(k) + ": " + e.what(), tr);
    }
    const double after = max_abs(w);
    if (!all_finite(w) || after > 2.0 * before + 1e-12 || after > 1e6 * (1.0 + w0max)) {
      std::ostringstream msg;
      msg << "blow-up at step " << k << " (t = " << k * cfg.dt << "): max|w| went from " << before << " to "
          << after;
      w = last_good;
      snapshot(static_cast<double>(k - 1) * cfg.dt);
      throw EvolutionAborted(msg.str(), tr);
    }
    const double t = static_cast<double>(k) * cfg.dt;
    record(t, stats.iterations);
    if ((cfg.snapshot_stride > 0 && k % cfg.snapshot_stride == 0) || k == steps) {
      if (tr.snapshot_times.back() != t) snapshot(t);
    }
  }
  return tr;
}

DecayFit decay_rate_fit(const Trajectory& traj, double t0, double t1) {
  if (traj.times.empty() || !(t1 > t0) || t0 < traj.times.front() || t1 > traj.times.back() + 1e-12) {
    throw Error(ErrorKind::InvalidArgument, "decay window must lie inside the trajectory");
  }
  std::vector<double> ts, ls;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    if (traj.times[i] < t0 - 1e-12 || traj.times[i] > t1 + 1e-12) continue;
    if (!(traj.l2_w[i] > 0.0)) throw Error(ErrorKind::InvalidArgument, "norm vanishes inside the decay window");
    ts.push_back(traj.times[i]);
    ls.push_back(std::log(traj.l2_w[i]));
  }
  if (ts.size() < 3) throw Error(ErrorKind::InvalidArgument, "decay window holds fewer than 3 samples");
  const double n = static_cast<double>(ts.size());
  const double mt = std::accumulate(ts.begin(), ts.end(), 0.0) / n;
  const double ml = std::accumulate(ls.begin(), ls.end(), 0.0) / n;
  double stt = 0.0, stl = 0.0, sll = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    stt += (ts[i] - mt) * (ts[i] - mt);
    stl += (ts[i] - mt) * (ls[i] - ml);
    sll += (ls[i] - ml) * (ls[i] - ml);
  }
  const double slope = stl / stt;
  const double r2 = sll > 0.0 ? stl * stl / (stt * sll) : 1.0;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    if (!(ls[i] < ls[i - 1])) {
      std::ostringstream msg;
      msg << "log-norm is not monotone on the decay window (r^2 = " << r2 << "); no rate reported";
      throw Error(ErrorKind::InvalidArgument, msg.str());
    }
  }
  return {-slope, r2, ts.size()};
}

}  // namespace fracpm
