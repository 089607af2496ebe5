#pragma once

#include <cstddef>
#include <vector>

#include "fracpm/grid.hpp"

namespace fracpm {

/// A closed C^3-or-better curve in the plane, parametrized by t in [0,1)
/// counterclockwise. Either an exact circle or a periodic cubic spline through
/// a list of points (uniform parameter spacing).
class CurveGamma {
 public:
  static CurveGamma circle(Point center, double radius);
  static CurveGamma spline(std::vector<Point> points);

  [[nodiscard]] bool is_circle() const noexcept { return circle_; }
  [[nodiscard]] Point center() const noexcept { return center_; }
  [[nodiscard]] double radius() const noexcept { return radius_; }
  [[nodiscard]] const std::vector<Point>& control_points() const noexcept { return pts_; }

  [[nodiscard]] Point point(double t) const;
  /// d gamma / dt.
  [[nodiscard]] Point tangent(double t) const;
  [[nodiscard]] Point second_derivative(double t) const;
  [[nodiscard]] double speed(double t) const;
  [[nodiscard]] double curvature(double t) const;
  /// Outward unit normal.
  [[nodiscard]] Point normal(double t) const;

  [[nodiscard]] double length() const;
  [[nodiscard]] double max_curvature() const;
  /// Axis-aligned bounds {xmin, ymin, xmax, ymax}.
  [[nodiscard]] std::array<double, 4> bounds() const;

  struct Projection {
    double t;
    Point foot;
    double distance;
    /// +1 outside, -1 inside.
    int side;
  };
  /// Nearest point of the curve to x (plain Euclidean, no periodic images).
  [[nodiscard]] Projection project(const Point& x) const;
  [[nodiscard]] bool contains(const Point& x) const { return project(x).side < 0; }

  struct Node {
    Point y;
    double weight;  // arclength weight
    double t;
  };
  /// Composite 16-point Gauss-Legendre rule on `panels` equal parameter panels.
  [[nodiscard]] std::vector<Node> quadrature(std::size_t panels) const;

  [[nodiscard]] CurveGamma translated(Point shift) const;

 private:
  CurveGamma() = default;
  void build_spline();
  // local spline segment and offset for parameter t
  [[nodiscard]] std::size_t segment(double t, double& s) const;

  bool circle_ = false;
  Point center_{0.0, 0.0};
  double radius_ = 0.0;
  std::vector<Point> pts_;
  std::vector<Point> m2_;  // second derivatives w.r.t. segment variable at knots
};

}  // namespace fracpm
