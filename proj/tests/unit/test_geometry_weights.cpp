#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fracpm/error.hpp"
#include "fracpm/geometry.hpp"
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

CurveGamma ellipse_spline() {
  std::vector<Point> pts;
  for (int i = 0; i < 48; ++i) {
    const double t = 2 * kPi * i / 48;
    pts.push_back({0.1 + 0.35 * std::cos(t), -0.05 + 0.2 * std::sin(t) + 0.03 * std::sin(3 * t)});
  }
  return CurveGamma::spline(pts);
}

double torus_distance(const Point& a, const Point& b, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) {
    double d = std::fmod(std::abs(a[i] - b[i]), 2.0);
    d = std::min(d, 2.0 - d);
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

// ---- JumpSet

TEST(JumpSet, LineValidation) {
  EXPECT_EQ(kind_of([] { (void)JumpSet::line({0.0}, {1.0}); }), ErrorKind::Geometry);
  EXPECT_EQ(kind_of([] { (void)JumpSet::line({-1.0, 1.0}, {1.0, 0.0}); }), ErrorKind::Geometry);
  EXPECT_EQ(kind_of([] { (void)JumpSet::line({-0.5, 0.5}, {1.0}); }), ErrorKind::Geometry);
  EXPECT_EQ(kind_of([] { (void)JumpSet::line({-0.5, 0.5}, {1.0, std::nan("")}); }), ErrorKind::Geometry);
}

TEST(JumpSet, PlaneValidation) {
  const auto a = CurveGamma::circle({-0.3, 0.0}, 0.2);
  const auto b = CurveGamma::circle({-0.1, 0.0}, 0.2);
  const auto inner = CurveGamma::circle({-0.3, 0.0}, 0.05);
  EXPECT_EQ(kind_of([&] { (void)JumpSet::plane({a, b}, {1.0, 2.0}); }), ErrorKind::Geometry);
  EXPECT_EQ(kind_of([&] { (void)JumpSet::plane({a, inner}, {1.0, 2.0}); }), ErrorKind::Geometry);
  EXPECT_EQ(kind_of([&] { (void)JumpSet::plane({a}, {}); }), ErrorKind::Geometry);
  EXPECT_NO_THROW((void)JumpSet::plane({a, CurveGamma::circle({0.4, 0.0}, 0.2)}, {1.0, 2.0}));
}

TEST(JumpSet, ComponentsAndHeights) {
  const auto I = JumpSet::centered_interval();
  EXPECT_EQ(I.component_count(), 2u);
  EXPECT_EQ(I.jump_heights(), (std::vector<double>{1.0, -1.0}));
  EXPECT_NE(I.component_of({0.0, 0.0}), I.component_of({0.9, 0.0}));
  EXPECT_EQ(I.component_of({0.9, 0.0}), I.component_of({-0.9, 0.0}));
  EXPECT_EQ(I.step_value({0.1, 0.0}), 1.0);
  EXPECT_EQ(I.step_value({0.7, 0.0}), 0.0);

  const auto D = JumpSet::centered_disc(0.5);
  EXPECT_EQ(D.component_count(), 2u);
  EXPECT_EQ(D.step_value({0.1, 0.2}), 1.0);
  EXPECT_EQ(D.step_value({0.6, 0.2}), 0.0);
}

// ---- distance

TEST(Distance, Examples) {
  EXPECT_DOUBLE_EQ(distance_to_gamma({0.0, 0.0}, JumpSet::centered_interval()), 0.5);
  EXPECT_NEAR(distance_to_gamma({0.7, 0.0}, JumpSet::centered_disc(0.5)), 0.2, 1e-15);
  EXPECT_EQ(distance_to_gamma({0.5, 0.0}, JumpSet::centered_interval()), 0.0);
  // periodic convention: -0.95 is 0.45 away from 0.5 through the boundary
  EXPECT_NEAR(distance_to_gamma({-0.95, 0.0}, JumpSet::centered_interval()), 0.45, 1e-15);
}

TEST(Distance, CircleIsExact) {
  const auto D = JumpSet::plane({CurveGamma::circle({0.1, -0.2}, 0.3)}, {1.0});
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (int i = 0; i < 200; ++i) {
    const Point x{u(rng), u(rng)};
    EXPECT_NEAR(distance_to_gamma(x, D), std::abs(std::hypot(x[0] - 0.1, x[1] + 0.2) - 0.3), 1e-14);
  }
}

TEST(Distance, SplineMatchesDenseSampling) {
  const auto c = ellipse_spline();
  const auto js = JumpSet::plane({c}, {1.0});
  std::vector<Point> samples(100000);
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = c.point(static_cast<double>(i) / samples.size());
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.5, 0.6);
  for (int i = 0; i < 40; ++i) {
    const Point x{u(rng), u(rng)};
    double brute = 1e9;
    std::size_t best = 0;
    for (std::size_t j = 0; j < samples.size(); ++j) {
      const double d = std::hypot(x[0] - samples[j][0], x[1] - samples[j][1]);
      if (d < brute) brute = d, best = j;
    }
    // resample the two neighbouring intervals finely
    for (int j = -20000; j <= 20000; ++j) {
      const double t = (static_cast<double>(best) + j / 10000.0) / samples.size();
      const auto y = c.point(t - std::floor(t));
      brute = std::min(brute, std::hypot(x[0] - y[0], x[1] - y[1]));
    }
    EXPECT_NEAR(distance_to_gamma(x, js), brute, 1e-8) << x[0] << "," << x[1];
  }
}

TEST(Distance, OneLipschitzOnRandomPairs) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto I = JumpSet::line({-0.7, 0.1, 0.4}, {1.0, 2.0, 3.0});
  const auto S = JumpSet::plane({ellipse_spline()}, {1.0});
  for (int i = 0; i < 500; ++i) {
    const Point a{u(rng), u(rng)}, b{u(rng), u(rng)};
    EXPECT_LE(std::abs(distance_to_gamma(a, I) - distance_to_gamma(b, I)), torus_distance(a, b, 1) + 1e-14);
    EXPECT_LE(std::abs(distance_to_gamma(a, S) - distance_to_gamma(b, S)), torus_distance(a, b, 2) + 1e-12);
  }
}

// ---- capped weight

TEST(Weight, InnerAndOuterRegions) {
  const auto I = JumpSet::centered_interval();
  const double delta = 0.1;
  EXPECT_NEAR(weight_d({0.45, 0.0}, I, delta), 0.05, 1e-15);
  EXPECT_EQ(weight_d({0.2, 0.0}, I, delta), 1.0);
  const auto D = JumpSet::centered_disc(0.5);
  EXPECT_NEAR(weight_d({0.55, 0.0}, D, delta), 0.05, 1e-14);
  EXPECT_EQ(weight_d({0.0, 0.0}, D, delta), 1.0);
}

TEST(Weight, RejectsInsufficientClearance) {
  EXPECT_EQ(kind_of([] { (void)weight_d({0.0, 0.0}, JumpSet::centered_interval(), 0.3); }), ErrorKind::Geometry);
  EXPECT_EQ(kind_of([] { (void)weight_d({0.0, 0.0}, JumpSet::centered_disc(0.5), 0.3); }), ErrorKind::Geometry);
  EXPECT_EQ(kind_of([] { (void)WeightField(PeriodicGrid(1, 64), JumpSet::centered_interval(), 0.3); }),
            ErrorKind::Geometry);
}

TEST(Weight, MonotoneTransectThroughBlend) {
  const auto I = JumpSet::centered_interval();
  const double delta = 0.2;
  double prev = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double dist = 0.5 * i / 1000.0;  // 0 .. 2.5 delta
    const double w = weight_d({0.5 - dist, 0.0}, I, delta);
    EXPECT_GE(w, prev) << dist;
    EXPECT_LE(w, 1.0);
    prev = w;
  }
}

// C^3 joins: the gap to the neighbouring branch shrinks like eta^4.
TEST(Weight, ThirdOrderContactAtBothEnds) {
  const double delta = 0.1;
  auto ratio_inner = [&](double eta) {
    return std::abs(weight_from_distance(delta + eta, delta) - (delta + eta)) /
           std::abs(weight_from_distance(delta + eta / 2, delta) - (delta + eta / 2));
  };
  auto ratio_outer = [&](double eta) {
    return std::abs(weight_from_distance(2 * delta - eta, delta) - 1.0) /
           std::abs(weight_from_distance(2 * delta - eta / 2, delta) - 1.0);
  };
  for (double eta : {2e-3, 5e-4}) {
    EXPECT_NEAR(ratio_inner(eta), 16.0, 1.0) << eta;
    EXPECT_NEAR(ratio_outer(eta), 16.0, 1.0) << eta;
  }
}

TEST(WeightField, ValuesInUnitInterval) {
  const PeriodicGrid g(2, 64);
  const auto js = align_to_grid(JumpSet::centered_disc(0.5), g).js;
  const WeightField w(g, js, 0.2);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_GT(w.values()[i], 0.0);
    EXPECT_LE(w.values()[i], 1.0);
  }
  EXPECT_STREQ(WeightField::recipe(), "smoothstep7");
}

// ---- weighted norms

TEST(WeightedNorm, Examples) {
  for (int dim : {1, 2}) {
    const PeriodicGrid g(dim, 64);
    const auto js = align_to_grid(dim == 1 ? JumpSet::centered_interval() : JumpSet::centered_disc(0.5), g).js;
    const WeightField w(g, js, 0.2);
    EXPECT_EQ(weighted_norm(ScalarField(g), 2, 2.0, -1.0, w).value, 0.0);
    const auto one = ScalarField::from_function(g, [](const Point&) { return 1.0; });
    for (double p : {1.5, 2.0, 4.0}) {
      EXPECT_NEAR(weighted_norm(one, 0, p, 0.0, w).value, std::pow(2.0, dim / p), 1e-13) << dim << " " << p;
    }
    const auto u = ScalarField::from_function(g, [](const Point& x) { return std::sin(kPi * x[0]) + 0.2 * x[1]; });
    double prev = 0.0;
    for (int k = 0; k <= 2; ++k) {
      const double v = weighted_norm(u, k, 2.0, 0.5, w).value;
      EXPECT_GE(v, prev);
      prev = v;
    }
  }
}

TEST(WeightedNorm, ChangeOfWeight) {
  const PeriodicGrid g(1, 256);
  const auto js = align_to_grid(JumpSet::centered_interval(), g).js;
  const WeightField w(g, js, 0.2);
  const auto u = fracpm::testing::random_field(g, 12);
  for (double s : {-0.7, 0.3, 1.5}) {
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::pow(w.values()[i], -s) * u[i];
    const double a = weighted_norm(ScalarField(g, v), 0, 2.0, 0.4 + s, w).value;
    const double b = weighted_norm(u, 0, 2.0, 0.4, w).value;
    EXPECT_NEAR(a, b, 1e-10 * b) << s;
  }
}

TEST(WeightedNorm, ExcludesNodesNearGammaForStrongWeights) {
  const PeriodicGrid g(1, 64);
  const double h = g.spacing();
  const auto js = JumpSet::line({-0.5 + h / 4, 0.5 + h / 4}, {1.0, 0.0});
  const WeightField w(g, js, 0.2);
  const auto u = ScalarField::from_function(g, [](const Point& x) { return std::cos(kPi * x[0]); });
  EXPECT_EQ(weighted_norm(u, 0, 2.0, -2.0, w).excluded, 2u);
  EXPECT_EQ(weighted_norm(u, 0, 2.0, -1.0, w).excluded, 0u);
}

TEST(WeightedNorm, RejectsBadArguments) {
  const PeriodicGrid g(1, 64);
  const WeightField w(g, align_to_grid(JumpSet::centered_interval(), g).js, 0.2);
  EXPECT_THROW((void)weighted_norm(ScalarField(g), 3, 2.0, 0.0, w), Error);
  EXPECT_THROW((void)weighted_norm(ScalarField(g), 0, 1.0, 0.0, w), Error);
  EXPECT_THROW((void)weighted_norm(ScalarField(PeriodicGrid(1, 32)), 0, 2.0, 0.0, w), Error);
}

// ---- exponent fit

TEST(ExponentFit, ExactOnPowerLaws) {
  for (double a : {0.3, -0.7, 2.5}) {
    std::vector<std::pair<double, double>> pts;
    for (double d : log_spaced(1e-4, 1e-2, 32)) pts.emplace_back(d, 3.0 * std::pow(d, a));
    const auto fit = exponent_fit(pts);
    EXPECT_NEAR(fit.slope, a, 1e-12);
    EXPECT_NEAR(fit.r2, 1.0, 1e-12);
    EXPECT_EQ(fit.samples, 32u);
  }
}

TEST(ExponentFit, RejectsBadInput) {
  std::vector<std::pair<double, double>> few;
  for (double d : log_spaced(1e-4, 1e-2, 7)) few.emplace_back(d, d);
  EXPECT_EQ(kind_of([&] { (void)exponent_fit(few); }), ErrorKind::InvalidArgument);
  auto neg = few;
  neg.emplace_back(1e-3, -1.0);
  neg.emplace_back(2e-3, 1.0);
  EXPECT_EQ(kind_of([&] { (void)exponent_fit(neg); }), ErrorKind::InvalidArgument);
  std::vector<std::pair<double, double>> narrow;
  for (double d : log_spaced(1e-3, 5e-2, 16)) narrow.emplace_back(d, d);
  EXPECT_EQ(kind_of([&] { (void)exponent_fit(narrow); }), ErrorKind::InvalidArgument);
}

TEST(ExponentFit, OracleFieldAtEps07) {
  const auto js = JumpSet::centered_interval();
  const SingularField S(js, FracParams(0.7));
  std::vector<std::pair<double, double>> pts;
  for (const auto& pr : normal_probes(js, 1, 0.0, log_spaced(1e-4, 1e-2, 32))) pts.emplace_back(pr.d, std::abs(S(pr.x)));
  EXPECT_NEAR(exponent_fit(pts).slope, -0.3, 0.05);
}

TEST(ExponentFit, OracleCoefficientAtEps07) {
  const auto js = JumpSet::centered_interval();
  const SingularField S(js, FracParams(0.7));
  std::vector<std::pair<double, double>> pts;
  for (const auto& pr : normal_probes(js, 1, 0.0, log_spaced(1e-4, 1e-2, 32))) {
    const double s = S(pr.x);
    pts.emplace_back(pr.d, 1.0 / (1.0 + s * s));
  }
  EXPECT_NEAR(exponent_fit(pts).slope, 0.6, 0.05);
}

TEST(Probes, InteriorSideAtRequestedDistance) {
  const auto D = JumpSet::centered_disc(0.5);
  for (const auto& pr : normal_probes(D, 0, 0.3, {1e-3, 1e-2})) {
    EXPECT_NEAR(distance_to_gamma(pr.x, D), pr.d, 1e-13);
    EXPECT_EQ(D.step_value(pr.x), 1.0);
  }
  const auto I = JumpSet::centered_interval();
  for (std::size_t c : {0u, 1u}) {
    for (const auto& pr : normal_probes(I, c, 0.0, {1e-4, 1e-2})) {
      EXPECT_NEAR(distance_to_gamma(pr.x, I), pr.d, 1e-15);
      EXPECT_EQ(I.step_value(pr.x), 1.0);
    }
  }
}
