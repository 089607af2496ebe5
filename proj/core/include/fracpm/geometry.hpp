#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "fracpm/curve.hpp"
#include "fracpm/grid.hpp"

namespace fracpm {

/// Discontinuity set Gamma with the piecewise-constant datum H.
///
/// 1D: sorted jump points a_0 < ... < a_{m-1} in [-1,1); values[i] is the value
/// of H on (a_i, a_{i+1}) (cyclically). 2D: disjoint, non-nested closed curves,
/// each with an interior value, and one exterior value.
class JumpSet {
 public:
  /// Empty placeholder; usable only as an assignment target.
  JumpSet() = default;
  static JumpSet line(std::vector<double> points, std::vector<double> values);
  static JumpSet plane(std::vector<CurveGamma> curves, std::vector<double> inside_values,
                       double outside_value = 0.0);
  /// H = indicator of (-1/2, 1/2).
  static JumpSet centered_interval();
  /// H = indicator of the disc of radius r about the origin.
  static JumpSet centered_disc(double radius);

  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] const std::vector<double>& points() const noexcept { return points_; }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
  [[nodiscard]] const std::vector<CurveGamma>& curves() const noexcept { return curves_; }
  [[nodiscard]] double outside_value() const noexcept { return outside_; }

  /// 1D: signed jump H(a_j+) - H(a_j-). 2D: inside minus outside per curve.
  [[nodiscard]] std::vector<double> jump_heights() const;
  [[nodiscard]] std::size_t component_count() const noexcept;
  /// Index of the connected component of Q \ Gamma containing x.
  [[nodiscard]] std::size_t component_of(const Point& x) const;
  [[nodiscard]] double step_value(const Point& x) const;

  /// Rigid translation (1D points wrap into [-1,1)).
  [[nodiscard]] JumpSet translated(Point shift) const;

  /// Throws Geometry unless the 2*delta tube is embedded, disjoint between
  /// components and clear of the cube faces, and delta <= 1/2.
  void require_clearance(double delta) const;

  /// Nearest point of Gamma to x under the periodic convention (plain
  /// coordinates of the foot, which may lie in a neighbouring image).
  struct Nearest {
    double distance;
    std::size_t component;  // jump index (1D) or curve index (2D)
    Point foot;
    Point normal;  // unit normal at the foot: +x for points, outward for curves
    double t;      // curve parameter (2D)
  };
  [[nodiscard]] Nearest nearest(const Point& x) const;

 private:
  int dim_ = 1;
  std::vector<double> points_;
  std::vector<double> values_;
  std::vector<CurveGamma> curves_;
  double outside_ = 0.0;
};

/// Periodic distance from x to Gamma.
[[nodiscard]] double distance_to_gamma(const Point& x, const JumpSet& js);

/// Capped distance: dist below delta, 1 beyond 2*delta, degree-7 smoothstep blend.
[[nodiscard]] double weight_d(const Point& x, const JumpSet& js, double delta);
/// The blend as a function of the distance alone.
[[nodiscard]] double weight_from_distance(double dist, double delta);

class WeightField {
 public:
  WeightField(const PeriodicGrid& grid, const JumpSet& js, double delta);

  [[nodiscard]] const PeriodicGrid& grid() const noexcept { return field_.grid(); }
  [[nodiscard]] const ScalarField& values() const noexcept { return field_; }
  [[nodiscard]] double delta() const noexcept { return delta_; }
  /// Always the degree-7 smoothstep blend in this implementation.
  [[nodiscard]] static const char* recipe() noexcept { return "smoothstep7"; }

 private:
  double delta_;
  ScalarField field_;
};

struct WeightedNorm {
  double value;
  std::size_t excluded;  // nodes with d < h/2 dropped (theta <= -2 only)
};

/// (sum_{i<=k} || d^{theta+i} |grad^i u| ||_p^p)^{1/p}; spectral derivatives,
/// trapezoid rule.
[[nodiscard]] WeightedNorm weighted_norm(const ScalarField& u, int k, double p_exp, double theta,
                                         const WeightField& w);

struct ExponentFit {
  double slope;
  double intercept;
  double r2;
  std::size_t samples;
};

/// Least-squares slope of log f against log d. Requires >= 8 positive samples
/// spanning at least two decades in d.
[[nodiscard]] ExponentFit exponent_fit(const std::vector<std::pair<double, double>>& values);

/// `count` logarithmically spaced values from lo to hi inclusive.
[[nodiscard]] std::vector<double> log_spaced(double lo, double hi, std::size_t count);

/// A probe at distance d from Gamma along the normal at a chosen foot point.
struct Probe {
  Point x;
  double d;
};

/// Probes on the interior side (toward the component where H is larger) of
/// jump/curve `component`, through the foot point at parameter t (2D) or the
/// jump point itself (1D).
[[nodiscard]] std::vector<Probe> normal_probes(const JumpSet& js, std::size_t component, double t,
                                               const std::vector<double>& distances);

}  // namespace fracpm
