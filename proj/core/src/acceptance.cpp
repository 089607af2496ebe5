#include "fracpm/acceptance.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <exception>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "fracpm/error.hpp"
#include "fracpm/evolution.hpp"
#include "fracpm/geometry.hpp"
#include "fracpm/linear.hpp"
#include "fracpm/oracles.hpp"
#include "fracpm/perturbation.hpp"
#include "fracpm/singular_field.hpp"
#include "fracpm/spectral.hpp"

namespace fracpm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

// Collects checks; the first failure becomes the detail line.
class Checker {
 public:
  explicit Checker(std::string id) { r_.id = std::move(id); }

  void metric(const std::string& name, double v) { r_.metrics.emplace_back(name, v); }

  bool check(bool ok, const std::string& what) {
    if (!ok && first_fail_.empty()) first_fail_ = what;
    ++checks_;
    if (!ok) ++fails_;
    return ok;
  }

  CriterionResult finish(Clock::time_point t0) {
    r_.pass = fails_ == 0;
    r_.seconds = seconds_since(t0);
    r_.detail = r_.pass ? std::to_string(checks_) + " checks passed"
                        : std::to_string(fails_) + "/" + std::to_string(checks_) + " checks failed; first: " +
                              first_fail_;
    return std::move(r_);
  }

 private:
  CriterionResult r_;
  std::string first_fail_;
  std::size_t checks_ = 0;
  std::size_t fails_ = 0;
};

std::string eps_tag(double eps) {
  std::ostringstream s;
  s << "eps=" << eps;
  return s.str();
}

// ---------------------------------------------------------------- C1
CriterionResult run_operator_consistency(const SuiteOptions& o) {
  const auto t0 = Clock::now();
  Checker c("C1");
  const PeriodicGrid grid(1, 1024);
  std::mt19937_64 rng(o.seed + 101);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::uniform_int_distribution<int> pick(1, 200);
  double runtime_max = 0.0;
  for (double eps : {0.3, 0.7}) {
    for (int trial = 0; trial < 2; ++trial) {
      SpectralCoeffs coeffs(grid);
      int placed = 0;
      while (placed < 50) {
        const int k = pick(rng);
        if (coeffs.at(k) != std::complex<double>{}) continue;
        const std::complex<double> z(unif(rng) / 50.0, unif(rng) / 50.0);
        coeffs.set(k, z);
        coeffs.set(-k, std::conj(z));
        ++placed;
      }
      const auto u = dft_inverse(coeffs);
      const FracParams p(eps);
      const auto ts = Clock::now();
      const auto du = frac_derivative_1d(u, p);
      runtime_max = std::max(runtime_max, seconds_since(ts));
      double err = 0.0;
      for (std::size_t j = 0; j < grid.n(); ++j) {
        err = std::max(err, std::abs(du[j] - series_frac_derivative(coeffs, p, grid.coord(j))));
      }
      c.metric(eps_tag(eps) + " trial" + std::to_string(trial) + " max_err", err);
      c.check(err < o.constants.operator_tolerance, eps_tag(eps) + " max error " + fmt(err));
    }
  }
  c.metric("spectral_runtime_s", runtime_max);
  c.check(runtime_max < o.constants.operator_runtime, "spectral runtime " + fmt(runtime_max) + " s");
  return c.finish(t0);
}

// ---------------------------------------------------------------- C2
CriterionResult run_singular_exponent_1d(const SuiteOptions& o) {
  const auto t0 = Clock::now();
  Checker c("C2");
  const auto js = JumpSet::centered_interval();
  const auto window = log_spaced(1e-4, 1e-2, 32);
  const auto deep = log_spaced(1e-10, 1e-8, 16);
  for (double eps : {0.3, 0.7, 0.9}) {
    const FracParams p(eps);
    const SingularField S(js, p);
    std::vector<std::pair<double, double>> pts;
    double qmin = INFINITY, qmax = 0.0;
    for (const auto& pr : normal_probes(js, 1, 0.0, window)) {
      const double v = std::abs(S(pr.x));
      pts.emplace_back(pr.d, v);
      const double q = std::pow(pr.d, 1.0 - eps) * v;
      qmin = std::min(qmin, q);
      qmax = std::max(qmax, q);
    }
    const auto fit = exponent_fit(pts);
    std::vector<std::pair<double, double>> dpts;
    for (const auto& pr : normal_probes(js, 1, 0.0, deep)) dpts.emplace_back(pr.d, std::abs(S(pr.x)));
    const auto dfit = exponent_fit(dpts);
    const auto tag = eps_tag(eps);
    c.metric(tag + " slope", fit.slope);
    c.metric(tag + " r2", fit.r2);
    c.metric(tag + " bound_min", qmin);
    c.metric(tag + " bound_max", qmax);
    c.metric(tag + " slope_deep_window", dfit.slope);
    c.check(std::abs(fit.slope - (eps - 1.0)) <= o.constants.slope_tolerance_1d,
            tag + " slope " + fmt(fit.slope) + " vs " + fmt(eps - 1.0));
    const double E = o.constants.bound_E;
    c.check(qmin > 1.0 / E && qmax < E, tag + " two-sided bound [" + fmt(qmin) + ", " + fmt(qmax) + "]");
  }
  return c.finish(t0);
}

// ---------------------------------------------------------------- C3
CriterionResult run_singular_exponents_2d(const SuiteOptions& o) {
  const auto t0 = Clock::now();
  Checker c("C3");
  const auto js = JumpSet::centered_disc(0.5);
  const auto window = log_spaced(1e-4, 1e-2, 32);
  const auto probes = normal_probes(js, 0, 0.0, window);
  for (double eps : {0.3, 0.7, 0.9}) {
    const FracParams p(eps);
    const SingularField S(js, p);
    std::vector<std::pair<double, double>> sv, gv, lv;
    for (const auto& pr : probes) {
      const auto f = S.derivatives(pr.x, pr.d / 8.0);
      sv.emplace_back(pr.d, std::abs(f.value));
      gv.emplace_back(pr.d, f.grad_norm);
      lv.emplace_back(pr.d, std::abs(f.laplacian));
    }
    const auto tag = eps_tag(eps);
    const double tol = o.constants.slope_tolerance_2d;
    const struct {
      const char* name;
      double target;
      ExponentFit fit;
    } rows[] = {{"field", eps - 1.0, exponent_fit(sv)},
                {"gradient", eps - 2.0, exponent_fit(gv)},
                {"laplacian", eps - 3.0, exponent_fit(lv)}};
    for (const auto& row : rows) {
      c.metric(tag + " " + row.name + "_slope", row.fit.slope);
      c.check(std::abs(row.fit.slope - row.target) <= tol,
              tag + " " + row.name + " slope " + fmt(row.fit.slope) + " vs " + fmt(row.target));
    }
    // Fourier route with about 1e5 modes at a moderate distance: the sharp cut
    // is only reported, the order-2 Riesz mean is checked.
    const Point x{0.4, 0.0};
    const double ref = S(x);
    const auto sharp = frac_gradient_H_2d_fourier(x, js.curves()[0], p, 178);
    const auto mean = frac_gradient_H_2d_fourier(x, js.curves()[0], p, 178, 2);
    const double rel = std::abs(mean.value - ref) / std::abs(ref);
    c.metric(tag + " fourier_modes", static_cast<double>(sharp.modes));
    c.metric(tag + " fourier_sharp_diff", std::abs(sharp.value - ref));
    c.metric(tag + " fourier_sharp_tail", sharp.tail);
    c.metric(tag + " fourier_riesz_rel_diff", rel);
    c.check(rel <= o.constants.fourier_crosscheck,
            tag + " Fourier route (Riesz mean) differs by " + fmt(rel) + " relative");
  }
  const double rt = seconds_since(t0);
  c.metric("runtime_s", rt);
  c.check(rt < o.constants.runtime_2d, "runtime " + fmt(rt) + " s");
  return c.finish(t0);
}

// ---------------------------------------------------------------- C4
CriterionResult run_beta_criterion(const SuiteOptions& o) {
  const auto t0 = Clock::now();
  Checker c("C4");
  const double tol = o.constants.beta_tolerance;
  const double b_half = beta_condition_value(0.5);
  c.metric("beta(0.5)", b_half);
  c.check(std::abs(b_half) <= tol, "beta(0.5) = " + fmt(b_half));
  for (int i = 1; i <= 9; ++i) {
    const double eps = 0.1 * i;
    const double b = beta_condition_value(eps);
    const double q = beta_condition_quadrature(eps);
    const auto tag = eps_tag(eps);
    c.metric(tag + " beta", b);
    c.metric(tag + " paths_diff", std::abs(b - q));
    c.check(std::abs(b - q) <= tol, tag + " paths differ by " + fmt(std::abs(b - q)));
    if (i != 5) {
      const double want = 1.0 - 2.0 * eps > 0 ? 1.0 : -1.0;
      c.check(b * want > tol, tag + " sign of beta " + fmt(b));
    }
  }
  return c.finish(t0);
}

// ---------------------------------------------------------------- C5
CriterionResult run_coefficient_exponent(const SuiteOptions& o) {
  const auto t0 = Clock::now();
  Checker c("C5");
  const JumpSet sets[] = {JumpSet::centered_interval(), JumpSet::centered_disc(0.5)};
  const auto window = log_spaced(1e-4, 1e-2, 32);
  const auto near = log_spaced(1e-3, 1e-2, 16);
  for (const auto& js : sets) {
    const std::size_t comp = js.dim() == 1 ? 1 : 0;
    const std::string dtag = js.dim() == 1 ? "1d " : "2d ";
    for (double eps : {0.3, 0.7, 0.9}) {
      const SingularField S(js, FracParams(eps));
      std::vector<std::pair<double, double>> pts;
      for (const auto& pr : normal_probes(js, comp, 0.0, window)) {
        const double s = S(pr.x);
        pts.emplace_back(pr.d, 1.0 / (1.0 + s * s));
      }
      const auto fit = exponent_fit(pts);
      const auto tag = dtag + eps_tag(eps);
      c.metric(tag + " alpha_slope", fit.slope);
      c.check(std::abs(fit.slope - (2.0 - 2.0 * eps)) <= o.constants.alpha_slope_tolerance,
              tag + " alpha slope " + fmt(fit.slope) + " vs " + fmt(2.0 - 2.0 * eps));
    }
    for (double eps : {0.3, 0.45, 0.55, 0.7}) {
      const FracParams p(eps, true);
      const SingularField S(js, p);
      const double sgn = 1.0 - 2.0 * eps > 0 ? 1.0 : -1.0;
      std::size_t bad = 0;
      double worst = INFINITY;
      for (const auto& pr : normal_probes(js, comp, 0.0, near)) {
        const auto a = alpha_H_and_derivatives(S, p, pr.x);
        const double v = sgn * a.laplacian;
        worst = std::min(worst, v);
        if (!(v > 0.0)) ++bad;
      }
      const auto tag = dtag + eps_tag(eps);
      c.metric(tag + " laplacian_sign_violations", static_cast<double>(bad));
      c.check(bad == 0, tag + " sign(1-2eps)*Lap(alpha) <= 0 at " + std::to_string(bad) + " probes");
    }
  }
  return c.finish(t0);
}

// ---------------------------------------------------------------- C6
CriterionResult run_stationarity(const SuiteOptions& o) {
  const auto t0 = Clock::now();
  Checker c("C6");
  const FracParams p(0.8);
  SolverConfig cfg;
  cfg.dt = 1e-4;
  cfg.T = 1.0;
  const struct {
    JumpSet js;
    PeriodicGrid grid;
    const char* tag;
  } runs[] = {{JumpSet::centered_interval(), PeriodicGrid(1, 512), "1d N=512"},
              {JumpSet::centered_disc(0.5), PeriodicGrid(2, 128), "2d N=128^2"}};
  for (const auto& run : runs) {
    const auto sample = precompute_singular_field(run.js, p, run.grid);
    const auto tr = evolve(ScalarField(run.grid), sample, p, cfg);
    const double worst = *std::max_element(tr.l2_w.begin(), tr.l2_w.end());
    c.metric(std::string(run.tag) + " steps", static_cast<double>(tr.times.size() - 1));
    c.metric(std::string(run.tag) + " max_l2_w", worst);
    c.check(tr.times.size() == cfg.steps() + 1, std::string(run.tag) + " step count");
    c.check(worst < o.constants.stationary_bound, std::string(run.tag) + " max |w|_2 = " + fmt(worst));
  }
  const double rt = seconds_since(t0);
  c.metric("runtime_s", rt);
  c.check(rt < o.constants.stationary_runtime, "runtime " + fmt(rt) + " s");
  return c.finish(t0);
}

// ---------------------------------------------------------------- C7
CriterionResult run_contraction(const SuiteOptions& o) {
  const auto t0 = Clock::now();
  Checker c("C7");
  PerturbationSpec spec;
  spec.kind = PerturbationKind::Noise;
  spec.amplitude = 1e-2;
  spec.taper = true;
  struct Run {
    int dim;
    std::size_t n;
    double eps;
    std::uint64_t seed;
  };
  std::vector<Run> runs;
  for (double eps : {0.6, 0.7, 0.8, 0.9}) {
    for (std::uint64_t s = 0; s < 2; ++s) runs.push_back({1, 256, eps, o.seed + 11 * s + 1});
  }
  runs.push_back({2, 64, 0.8, o.seed + 1});
  runs.push_back({2, 64, 0.8, o.seed + 12});
  for (const auto& r : runs) {
    const PeriodicGrid grid(r.dim, r.n);
    const FracParams p(r.eps);
    const auto js = r.dim == 1 ? JumpSet::centered_interval() : JumpSet::centered_disc(0.5);
    const auto sample = precompute_singular_field(js, p, grid);
    const auto w0 = make_perturbation(spec, grid, sample.js, 0.2, r.seed);
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.T = r.dim == 1 ? 0.2 : 0.05;
    const auto tr = evolve(w0, sample, p, cfg);
    double excess = -INFINITY, drift = 0.0;
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
      excess = std::max(excess, tr.linf_u[i] - tr.linf_u[0]);
      drift = std::max(drift, std::abs(tr.mean_u[i] - tr.mean_u[0]));
    }
    std::ostringstream tag;
    tag << r.dim << "d " << eps_tag(r.eps) << " seed=" << r.seed;
    c.metric(tag.str() + " linf_excess", excess);
    c.metric(tag.str() + " mean_drift", drift);
    c.check(excess <= o.constants.contraction_slack, tag.str() + " max|u| grew by " + fmt(excess));
    c.check(drift < o.constants.mean_drift, tag.str() + " mean drift " + fmt(drift));
  }
  return c.finish(t0);
}

// ---------------------------------------------------------------- C8
double deflated_gap(double eps, std::size_t n) {
  const auto op = assemble(JumpSet::centered_interval(), FracParams(eps), PeriodicGrid(1, n));
  return spectrum_deflated(op, EigenPath::Dense).gap;
}

CriterionResult run_spectral_bound(const SuiteOptions& o) {
  const auto t0 = Clock::now();
  Checker c("C8");
  for (double eps : {0.55, 0.7, 0.85}) {
    double prev = 0.0, last = 0.0;
    for (std::size_t n : {256u, 512u, 1024u}) {
      const double g = deflated_gap(eps, n);
      const auto tag = eps_tag(eps) + " N=" + std::to_string(n);
      c.metric(tag + " gap", g);
      c.check(g > 0.0, tag + " gap " + fmt(g));
      prev = last;
      last = g;
    }
    const double var = std::abs(last - prev) / std::abs(last);
    c.metric(eps_tag(eps) + " variation", var);
    c.check(var < o.constants.gap_variation, eps_tag(eps) + " gap varies by " + fmt(var));
  }
  return c.finish(t0);
}

// ---------------------------------------------------------------- C9
CriterionResult run_decay_rate(const SuiteOptions& o) {
  const auto t0 = Clock::now();
  Checker c("C9");
  const double eps = 0.8;
  const FracParams p(eps);
  const PeriodicGrid grid(1, 256);
  const auto sample = precompute_singular_field(JumpSet::centered_interval(), p, grid);
  const auto& pts = sample.js.points();
  PerturbationSpec spec;
  spec.kind = PerturbationKind::Mode;
  spec.wavenumber = 1;
  spec.center = {0.5 * (pts[0] + pts[1]), 0.0};
  spec.amplitude = 1e-3;
  spec.taper = true;
  const auto w0 = make_perturbation(spec, grid, sample.js, 0.2, o.seed);
  SolverConfig cfg;
  cfg.dt = 1e-3;
  cfg.T = 1.0;
  const auto tr = evolve(w0, sample, p, cfg);
  const auto fit = decay_rate_fit(tr, 0.3, 1.0);
  const auto op = assemble(JumpSet::centered_interval(), p, grid);
  const double gamma = spectrum_deflated(op, EigenPath::Dense).gap;
  const double rel = std::abs(fit.rate - gamma) / gamma;
  c.metric("decay_rate", fit.rate);
  c.metric("decay_r2", fit.r2);
  c.metric("gap", gamma);
  c.metric("relative_mismatch", rel);
  c.check(rel <= o.constants.decay_match, "rate " + fmt(fit.rate) + " vs gap " + fmt(gamma));
  return c.finish(t0);
}

// ---------------------------------------------------------------- C10
CriterionResult run_known_spectrum(const SuiteOptions& o) {
  const auto t0 = Clock::now();
  Checker c("C10");
  for (const auto& grid : {PeriodicGrid(1, 64), PeriodicGrid(2, 16)}) {
    std::vector<std::vector<double>> faces(static_cast<std::size_t>(grid.dim()),
                                           std::vector<double>(grid.size(), 1.0));
    const auto js = grid.dim() == 1 ? JumpSet::centered_interval() : JumpSet::centered_disc(0.5);
    const auto op = assemble_from_faces(grid, std::move(faces), js);
    const Eigen::MatrixXd dense = -Eigen::MatrixXd(op.A);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense, Eigen::EigenvaluesOnly);
    const auto want = fd_laplacian_eigenvalues(grid);
    double err = 0.0;
    for (std::size_t i = 0; i < want.size(); ++i) {
      err = std::max(err, std::abs(es.eigenvalues()(static_cast<Eigen::Index>(i)) - want[i]));
    }
    const std::string tag = grid.dim() == 1 ? "1d N=64" : "2d N=16^2";
    c.metric(tag + " eigen_err", err);
    c.check(err <= o.constants.fd_tolerance, tag + " eigenvalue error " + fmt(err));
  }
  const PeriodicGrid g(1, 64);
  const auto u = ScalarField::from_function(g, [](const Point& x) { return std::sin(std::numbers::pi * x[0]); });
  for (int i = 1; i <= 9; ++i) {
    const double eps = 0.1 * i;
    const auto du = frac_derivative_1d(u, FracParams(eps));
    double err = 0.0;
    for (std::size_t j = 0; j < g.n(); ++j) {
      err = std::max(err, std::abs(du[j] - std::numbers::pi * std::cos(std::numbers::pi * g.coord(j))));
    }
    c.metric(eps_tag(eps) + " sine_err", err);
    c.check(err <= o.constants.trivial_tolerance, eps_tag(eps) + " sine mode error " + fmt(err));
  }
  return c.finish(t0);
}

std::string verify_command(const std::string& id) {
  return "fracpm verify --config configs/verify/" + id + ".conf";
}

}  // namespace

std::vector<std::pair<std::string, double>> SuiteConstants::entries() const {
  return {{"operator_tolerance", operator_tolerance},
          {"operator_runtime", operator_runtime},
          {"slope_tolerance_1d", slope_tolerance_1d},
          {"bound_E", bound_E},
          {"slope_tolerance_2d", slope_tolerance_2d},
          {"runtime_2d", runtime_2d},
          {"fourier_crosscheck", fourier_crosscheck},
          {"beta_tolerance", beta_tolerance},
          {"alpha_slope_tolerance", alpha_slope_tolerance},
          {"stationary_bound", stationary_bound},
          {"stationary_runtime", stationary_runtime},
          {"contraction_slack", contraction_slack},
          {"mean_drift", mean_drift},
          {"gap_variation", gap_variation},
          {"decay_match", decay_match},
          {"fd_tolerance", fd_tolerance},
          {"trivial_tolerance", trivial_tolerance}};
}

void SuiteConstants::set(const std::string& name, double value) {
  double SuiteConstants::* const members[] = {
      &SuiteConstants::operator_tolerance, &SuiteConstants::operator_runtime,
      &SuiteConstants::slope_tolerance_1d, &SuiteConstants::bound_E,
      &SuiteConstants::slope_tolerance_2d, &SuiteConstants::runtime_2d,
      &SuiteConstants::fourier_crosscheck,
      &SuiteConstants::beta_tolerance,     &SuiteConstants::alpha_slope_tolerance,
      &SuiteConstants::stationary_bound,   &SuiteConstants::stationary_runtime,
      &SuiteConstants::contraction_slack,  &SuiteConstants::mean_drift,
      &SuiteConstants::gap_variation,      &SuiteConstants::decay_match,
      &SuiteConstants::fd_tolerance,       &SuiteConstants::trivial_tolerance};
  const auto names = entries();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i].first == name) {
      this->*members[i] = value;
      return;
    }
  }
  throw Error(ErrorKind::Config, "unknown suite constant '" + name + "'");
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = [] {
    std::vector<Criterion> v{
        {"C1", "Operator consistency",
         "spectral 1D fractional derivative equals direct summation on 50-mode random fields (N = 1024)", "",
         run_operator_consistency},
        {"C2", "1D singular exponent",
         "|frac derivative of H| ~ d^(eps-1) near a jump, with a two-sided bound on the window", "",
         run_singular_exponent_1d},
        {"C3", "2D singular exponents",
         "field, gradient and Laplacian of the fractional gradient of a disc indicator scale as d^(eps-1), "
         "d^(eps-2), d^(eps-3)",
         "", run_singular_exponents_2d},
        {"C4", "Beta criterion", "the Beta-function combination vanishes exactly at eps = 1/2 with sign(1-2eps)",
         "", run_beta_criterion},
        {"C5", "Coefficient exponent",
         "alpha(H) ~ d^(2-2eps) in 1D and 2D; sign(1-2eps) Lap alpha(H) > 0 near Gamma", "",
         run_coefficient_exponent},
        {"C6", "Stationarity", "the step datum is a stationary solution: w stays zero for 1e4 steps", "",
         run_stationarity},
        {"C7", "Contraction and conservation",
         "max|u| does not grow and the mean is conserved under random perturbations", "", run_contraction},
        {"C8", "Spectral bound", "the deflated linearized operator has a positive gap, stable under refinement",
         "", run_spectral_bound},
        {"C9", "Exponential convergence", "small perturbations decay at the rate given by the deflated gap", "",
         run_decay_rate},
        {"C10", "Known spectrum", "alpha = 1 reproduces the FD Laplacian spectrum; sin(pi x) maps to pi cos(pi x)",
         "", run_known_spectrum},
    };
    for (auto& c : v) c.command = verify_command(c.id);
    return v;
  }();
  return list;
}

std::vector<CriterionResult> run_suite(const SuiteOptions& options) {
  std::vector<const Criterion*> selected;
  for (const auto& c : criteria()) {
    if (options.only.empty() || std::find(options.only.begin(), options.only.end(), c.id) != options.only.end()) {
      selected.push_back(&c);
    }
  }
  for (const auto& id : options.only) {
    const bool known = std::any_of(criteria().begin(), criteria().end(), [&](const Criterion& c) { return c.id == id; });
    if (!known) throw Error(ErrorKind::Config, "unknown criterion id '" + id + "'");
  }
  std::vector<CriterionResult> results(selected.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < selected.size(); i = next++) {
      const auto t0 = Clock::now();
      try {
        results[i] = selected[i]->run(options);
      } catch (const std::exception& e) {
        results[i].id = selected[i]->id;
        results[i].pass = false;
        results[i].detail = std::string("aborted: ") + e.what();
        results[i].seconds = seconds_since(t0);
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(selected.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  return results;
}

std::string suite_summary_json(const SuiteOptions& options, const std::vector<CriterionResult>& results) {
  nlohmann::ordered_json j;
  j["seed"] = options.seed;
  j["threads"] = options.threads;
  auto& k = j["constants"];
  k = nlohmann::ordered_json::object();
  for (const auto& [name, v] : options.constants.entries()) k[name] = v;
  bool all = true;
  auto& arr = j["criteria"];
  arr = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json e;
    e["id"] = r.id;
    for (const auto& c : criteria()) {
      if (c.id == r.id) {
        e["title"] = c.title;
        e["claim"] = c.claim;
        e["command"] = c.command;
      }
    }
    e["pass"] = r.pass;
    e["detail"] = r.detail;
    e["seconds"] = r.seconds;
    auto& m = e["metrics"];
    m = nlohmann::ordered_json::object();
    for (const auto& [name, v] : r.metrics) {
      if (std::isfinite(v)) m[name] = v;
      else m[name] = nullptr;
    }
    arr.push_back(std::move(e));
    all = all && r.pass;
  }
  j["pass"] = all;
  return j.dump(2) + "\n";
}

unsigned worker_count_from_env() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FRACPM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) n = std::min<unsigned>(n, static_cast<unsigned>(v));
    else throw Error(ErrorKind::Config, "FRACPM_THREADS must be a positive integer");
  }
  return n;
}

}  // namespace fracpm
