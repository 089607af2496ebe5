#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "fracpm/config.hpp"
#include "fracpm/error.hpp"
#include "fracpm/evolution.hpp"
#include "fracpm/linear.hpp"
#include "fracpm/perturbation.hpp"
#include "fracpm/singular_field.hpp"
#include "test_support.hpp"

using namespace fracpm;
using fracpm::testing::kPi;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no fracpm::Error thrown";
  return ErrorKind::VerifyFailure;
}

double l2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// 1D run with the centered interval and a tapered mode perturbation centered
// between the (aligned) jumps.
struct ModeRun {
  SingularSample sample;
  ScalarField w0;
};
ModeRun mode_run(double eps, std::size_t n, double amplitude) {
  const PeriodicGrid grid(1, n);
  auto sample = precompute_singular_field(JumpSet::centered_interval(), FracParams(eps), grid);
  PerturbationSpec spec;
  spec.kind = PerturbationKind::Mode;
  spec.wavenumber = 1;
  spec.center = {0.5 * (sample.js.points()[0] + sample.js.points()[1]), 0.0};
  spec.amplitude = amplitude;
  auto w0 = make_perturbation(spec, grid, sample.js, 0.2, 0);
  return {std::move(sample), std::move(w0)};
}

}  // namespace

// ---- solver configuration

TEST(SolverConfig, Validation) {
  SolverConfig c;
  EXPECT_NO_THROW(c.validate());
  c.dt = 0.0;
  EXPECT_EQ(kind_of([&] { c.validate(); }), ErrorKind::Config);
  c = {};
  c.T = -1.0;
  EXPECT_EQ(kind_of([&] { c.validate(); }), ErrorKind::Config);
  c = {};
  c.tolerance = 1e-5;
  EXPECT_EQ(kind_of([&] { c.validate(); }), ErrorKind::Config);
  c = {};
  c.dt = 1e-3;
  c.T = 0.5;
  EXPECT_EQ(c.steps(), 500u);
}

// ---- singular field on the grid

TEST(Precompute, OddForSymmetricUnshiftedSet) {
  const PeriodicGrid g(1, 256);
  const auto js = JumpSet::line({-0.3, 0.3}, {1.0, 0.0});
  const auto s = precompute_singular_field(js, FracParams(0.4), g);
  ASSERT_FALSE(s.shifted);
  for (std::size_t j = 1; j < g.n(); ++j) EXPECT_NEAR(s.S[j], -s.S[g.n() - j], 1e-11);
}

TEST(Precompute, CenteredIntervalIsShiftedAndOddAboutNewCenter) {
  const PeriodicGrid g(1, 256);
  const FracParams p(0.4);
  const auto s = precompute_singular_field(JumpSet::centered_interval(), p, g);
  ASSERT_TRUE(s.shifted);
  EXPECT_FALSE(s.warning.empty());
  const double c = 0.5 * (s.js.points()[0] + s.js.points()[1]);
  EXPECT_NEAR(c, g.spacing() / 4, 1e-15);
  const SingularField f(s.js, p);
  for (std::size_t j = 0; j < g.n(); j += 7) {
    const double x = g.coord(j);
    EXPECT_NEAR(s.S[j], -f({2 * c - x, 0.0}), 1e-10 * std::max(1.0, std::abs(s.S[j])));
  }
}

TEST(Precompute, MaximumSitsNextToGamma) {
  for (int dim : {1, 2}) {
    const PeriodicGrid g(dim, dim == 1 ? 512 : 64);
    const auto s = precompute_singular_field(dim == 1 ? JumpSet::centered_interval() : JumpSet::centered_disc(0.5),
                                             FracParams(0.3), g);
    std::size_t arg = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (std::abs(s.S[i]) > std::abs(s.S[arg])) arg = i;
    }
    EXPECT_LE(distance_to_gamma(g.node(arg), s.js), g.spacing()) << dim;
  }
}

// With the centre at h/4 per axis the node offsets are h(4i-1)/4, so the only
// lattice symmetry left is the swap of the two offsets.
TEST(Precompute, SymmetricUnderDiagonalReflection) {
  const PeriodicGrid g(2, 32);
  const auto s = precompute_singular_field(JumpSet::centered_disc(0.5), FracParams(0.4), g);
  ASSERT_TRUE(s.shifted);
  const Point c = s.js.curves()[0].center();
  std::map<std::pair<long, long>, std::vector<double>> groups;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto x = g.node(i);
    long a = std::lround(4.0 * (x[0] - c[0]) / g.spacing()), b = std::lround(4.0 * (x[1] - c[1]) / g.spacing());
    if (a > b) std::swap(a, b);
    groups[{a, b}].push_back(s.S[i]);
  }
  std::size_t multi = 0;
  for (const auto& [key, vals] : groups) {
    if (vals.size() < 2) continue;
    ++multi;
    for (double v : vals) EXPECT_NEAR(v, vals.front(), 1e-10 * std::max(1.0, std::abs(vals.front()))) << key.first << "," << key.second;
  }
  EXPECT_GT(multi, 400u);
}

TEST(Precompute, CoarseGridStillWarnsAndSamples) {
  const auto s = precompute_singular_field(JumpSet::centered_interval(), FracParams(0.5), PeriodicGrid(1, 8));
  EXPECT_TRUE(s.shifted);
  EXPECT_FALSE(s.warning.empty());
  for (double v : s.S.values()) EXPECT_TRUE(std::isfinite(v));
}

// ---- single steps

TEST(Step, ZeroStaysZero) {
  const PeriodicGrid g(1, 128);
  const auto s = precompute_singular_field(JumpSet::centered_interval(), FracParams(0.6), g);
  EXPECT_EQ(step(ScalarField(g), s.S, FracParams(0.6), SolverConfig{}).max_abs(), 0.0);
}

TEST(Step, UnitCoefficientEigenmode) {
  for (int dim : {1, 2}) {
    const PeriodicGrid g(dim, 32);
    SolverConfig cfg;
    cfg.dt = 0.01;
    Stepper st(ScalarField(g), FracParams(0.5), cfg);
    const auto u = ScalarField::from_function(g, [](const Point& x) { return std::sin(kPi * x[0]); });
    std::vector<double> w(u.values().begin(), u.values().end());
    const std::vector<double> one(g.size(), 1.0);
    st.advance_with(w, one);
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(w[i], u[i] / (1.0 + cfg.dt * kPi * kPi), 1e-12) << dim;
  }
}

TEST(Step, AdvanceWithRejectsBadCoefficient) {
  const PeriodicGrid g(1, 16);
  Stepper st(ScalarField(g), FracParams(0.5), SolverConfig{});
  std::vector<double> w(16, 0.1), a(16, 1.0);
  a[3] = 0.0;
  EXPECT_EQ(kind_of([&] { st.advance_with(w, a); }), ErrorKind::InvalidArgument);
}

TEST(Step, MeanPreserved) {
  const PeriodicGrid g(1, 256);
  const FracParams p(0.7);
  const auto s = precompute_singular_field(JumpSet::centered_interval(), p, g);
  const auto w = fracpm::testing::random_field(g, 21);
  const auto next = step(w, s.S, p, SolverConfig{});
  EXPECT_NEAR(next.mean(), w.mean(), 1e-14);
}

// One step of each scheme differs by O(dt^2): halving dt quarters the gap.
TEST(Step, ExplicitAndSemiImplicitAgreeToSecondOrder) {
  const PeriodicGrid g(1, 64);
  const double h = g.spacing();
  const auto u = ScalarField::from_function(g, [](const Point& x) { return std::sin(kPi * x[0]) + 0.3 * std::cos(3 * kPi * x[0]); });
  const auto alpha = ScalarField::from_function(g, [](const Point& x) { return 0.6 + 0.3 * std::sin(kPi * x[0]); });
  auto gap = [&](double dt) {
    SolverConfig ci, ce;
    ci.dt = ce.dt = dt;
    ce.scheme = Scheme::Explicit;
    Stepper si(ScalarField(g), FracParams(0.5), ci), se(ScalarField(g), FracParams(0.5), ce);
    std::vector<double> a(u.values().begin(), u.values().end()), b = a;
    si.advance_with(a, alpha.values());
    se.advance_with(b, alpha.values());
    return l2(a, b);
  };
  const double dt = h * h / 8;
  const double r = gap(dt) / gap(dt / 2);
  EXPECT_GT(r, 3.6);
  EXPECT_LT(r, 4.4);
}

TEST(Step, NonConvergenceCarriesDiagnostic) {
  const PeriodicGrid g(1, 256);
  const FracParams p(0.8);
  const auto s = precompute_singular_field(JumpSet::centered_interval(), p, g);
  SolverConfig cfg;
  cfg.dt = 0.1;
  cfg.max_iterations = 1;
  try {
    (void)step(fracpm::testing::random_field(g, 2), s.S, p, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LinearAlgebra);
    EXPECT_NE(std::string(e.what()).find("did not converge"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("alpha range"), std::string::npos);
  }
}

// ---- trajectories

TEST(Evolve, ZeroPerturbationIsStationary) {
  SolverConfig cfg;
  cfg.dt = 1e-4;
  cfg.T = 1.0;  // 1e4 steps
  const PeriodicGrid g(1, 512);
  const auto tr = evolve(ScalarField(g), JumpSet::centered_interval(), FracParams(0.8), cfg);
  ASSERT_EQ(tr.times.size(), 10001u);
  for (double v : tr.l2_w) EXPECT_LT(v, 1e-12);
}

TEST(Evolve, SeriesShareLengthAndTimesIncrease) {
  const auto r = mode_run(0.6, 128, 1e-2);
  SolverConfig cfg;
  cfg.dt = 1e-3;
  cfg.T = 0.05;
  cfg.snapshot_stride = 10;
  const auto tr = evolve(r.w0, r.sample, FracParams(0.6), cfg);
  const auto n = tr.times.size();
  EXPECT_EQ(n, 51u);
  for (const auto* s : {&tr.l2_w, &tr.linf_u, &tr.mean_u, &tr.energy}) EXPECT_EQ(s->size(), n);
  for (std::size_t i = 1; i < n; ++i) EXPECT_GT(tr.times[i], tr.times[i - 1]);
  EXPECT_EQ(tr.snapshots.size(), 6u);
  EXPECT_EQ(tr.snapshot_times.back(), tr.times.back());
}

TEST(Evolve, NoiseRunsConserveMeanContractAndDissipate) {
  for (int dim : {1, 2}) {
    const PeriodicGrid g(dim, dim == 1 ? 256 : 32);
    const FracParams p(0.7);
    const auto js = dim == 1 ? JumpSet::centered_interval() : JumpSet::centered_disc(0.5);
    const auto sample = precompute_singular_field(js, p, g);
    PerturbationSpec spec;
    spec.kind = PerturbationKind::Noise;
    spec.amplitude = 1e-2;
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.T = 0.1;
    for (std::uint64_t seed : {1u, 2u}) {
      const auto w0 = make_perturbation(spec, g, sample.js, 0.2, seed);
      const auto tr = evolve(w0, sample, p, cfg);
      for (std::size_t i = 0; i < tr.times.size(); ++i) {
        EXPECT_LE(std::abs(tr.mean_u[i] - tr.mean_u[0]), 1e-10);
        EXPECT_LE(tr.linf_u[i], tr.linf_u[0] + 1e-8);
        if (i > 0) EXPECT_LE(tr.energy[i], tr.energy[i - 1] * (1.0 + 1e-9)) << dim << " step " << i;
      }
    }
  }
}

TEST(Evolve, DefaultSinePerturbationDecaysAfterTransient) {
  const PeriodicGrid g(1, 512);
  const FracParams p(0.3);
  const auto sample = precompute_singular_field(JumpSet::centered_interval(), p, g);
  PerturbationSpec spec;  // sine, 1e-3, tapered
  const auto w0 = make_perturbation(spec, g, sample.js, 0.2, 0);
  SolverConfig cfg;
  cfg.dt = 1e-3;
  cfg.T = 0.5;
  const auto tr = evolve(w0, sample, p, cfg);
  for (std::size_t i = 1; i < tr.times.size(); ++i) {
    if (tr.times[i] > 0.02) EXPECT_LT(tr.l2_w[i], tr.l2_w[i - 1]) << tr.times[i];
  }
}

TEST(Evolve, BlowUpAbortsWithLastGoodState) {
  const auto r = mode_run(0.5, 64, 1e-2);
  SolverConfig cfg;
  cfg.scheme = Scheme::Explicit;
  cfg.dt = 0.05;
  cfg.T = 1.0;
  try {
    (void)evolve(r.w0, r.sample, FracParams(0.5), cfg);
    FAIL() << "expected a blow-up";
  } catch (const EvolutionAborted& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BlowUp);
    ASSERT_FALSE(e.partial().snapshots.empty());
    for (double v : e.partial().snapshots.back().values()) EXPECT_TRUE(std::isfinite(v));
    EXPECT_NE(std::string(e.what()).find("blow-up"), std::string::npos);
  }
}

TEST(Evolve, FirstOrderInTime) {
  const auto r = mode_run(0.8, 128, 1e-2);
  auto endpoint = [&](double dt) {
    SolverConfig cfg;
    cfg.dt = dt;
    cfg.T = 0.1;
    const auto tr = evolve(r.w0, r.sample, FracParams(0.8), cfg);
    const auto v = tr.snapshots.back().values();
    return std::vector<double>(v.begin(), v.end());
  };
  const auto a = endpoint(1e-2), b = endpoint(5e-3), c = endpoint(2.5e-3);
  const double ratio = l2(a, b) / l2(b, c);
  EXPECT_GE(ratio, 1.7);
  EXPECT_LE(ratio, 2.3);
}

// ---- decay rates

TEST(DecayRate, SyntheticExponential) {
  Trajectory tr;
  for (int i = 0; i <= 100; ++i) {
    const double t = 0.01 * i;
    tr.times.push_back(t);
    tr.l2_w.push_back(0.7 * std::exp(-3.0 * t));
  }
  const auto fit = decay_rate_fit(tr, 0.2, 0.9);
  EXPECT_NEAR(fit.rate, 3.0, 1e-6);
  EXPECT_NEAR(fit.r2, 1.0, 1e-12);
}

TEST(DecayRate, RefusesNonMonotoneWindow) {
  Trajectory tr;
  for (int i = 0; i <= 20; ++i) {
    tr.times.push_back(0.05 * i);
    tr.l2_w.push_back(std::exp(-0.05 * i) * (1.0 + 0.2 * std::sin(3.0 * i)));
  }
  try {
    (void)decay_rate_fit(tr, 0.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
    EXPECT_NE(std::string(e.what()).find("r^2"), std::string::npos);
  }
  EXPECT_EQ(kind_of([&] { (void)decay_rate_fit(tr, 0.5, 2.0); }), ErrorKind::InvalidArgument);
}

TEST(DecayRate, MatchesDeflatedGapAndIgnoresAmplitude) {
  const double eps = 0.8;
  SolverConfig cfg;
  cfg.dt = 1e-3;
  cfg.T = 1.0;
  std::vector<double> rates;
  for (double amp : {1e-4, 1e-3}) {
    const auto r = mode_run(eps, 256, amp);
    rates.push_back(decay_rate_fit(evolve(r.w0, r.sample, FracParams(eps), cfg), 0.3, 1.0).rate);
  }
  EXPECT_NEAR(rates[0], rates[1], 0.1 * rates[1]);
  const double gap = spectrum_deflated(assemble(JumpSet::centered_interval(), FracParams(eps), PeriodicGrid(1, 256)),
                                       EigenPath::Dense)
                         .gap;
  EXPECT_NEAR(rates[1], gap, 0.2 * gap);
}
