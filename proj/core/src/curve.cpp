#include "fracpm/curve.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracpm/error.hpp"
#include "gauss_rule.hpp"

namespace fracpm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_unit(double t) {
  t -= std::floor(t);
  return t >= 1.0 ? 0.0 : t;
}

double dot(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1]; }
double norm(const Point& a) { return std::hypot(a[0], a[1]); }

}  // namespace

CurveGamma CurveGamma::circle(Point center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius) || !std::isfinite(center[0]) ||
      !std::isfinite(center[1])) {
    throw Error(ErrorKind::Geometry, "circle needs a finite center and positive radius");
  }
  CurveGamma c;
  c.circle_ = true;
  c.center_ = center;
  c.radius_ = radius;
  return c;
}

CurveGamma CurveGamma::spline(std::vector<Point> points) {
  if (points.size() < 4) throw Error(ErrorKind::Geometry, "spline curve needs at least 4 points");
  for (const auto& p : points) {
    if (!std::isfinite(p[0]) || !std::isfinite(p[1])) {
      throw Error(ErrorKind::Geometry, "non-finite spline point");
    }
  }
  double area = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& a = points[i];
    const auto& b = points[(i + 1) % points.size()];
    area += a[0] * b[1] - b[0] * a[1];
  }
  if (std::abs(area) < 1e-14) throw Error(ErrorKind::Geometry, "degenerate spline polygon");
  if (area < 0.0) std::reverse(points.begin(), points.end());
  CurveGamma c;
  c.pts_ = std::move(points);
  c.build_spline();
  return c;
}

void CurveGamma::build_spline() {
  // Periodic cubic interpolation in the segment variable s (unit knot spacing):
  // m[i-1] + 4 m[i] + m[i+1] = 6 (p[i+1] - 2 p[i] + p[i-1]).
  const auto m = static_cast<Eigen::Index>(pts_.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  Eigen::MatrixXd rhs(m, 2);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto im = (i + m - 1) % m;
    const auto ip = (i + 1) % m;
    a(i, im) += 1.0;
    a(i, i) += 4.0;
    a(i, ip) += 1.0;
    for (int d = 0; d < 2; ++d) {
      rhs(i, d) = 6.0 * (pts_[ip][d] - 2.0 * pts_[i][d] + pts_[im][d]);
    }
  }
  const Eigen::MatrixXd sol = a.partialPivLu().solve(rhs);
  m2_.resize(pts_.size());
  for (Eigen::Index i = 0; i < m; ++i) m2_[i] = {sol(i, 0), sol(i, 1)};
}

std::size_t CurveGamma::segment(double t, double& s) const {
  const double u = wrap_unit(t) * static_cast<double>(pts_.size());
  auto i = static_cast<std::size_t>(std::floor(u));
  if (i >= pts_.size()) i = pts_.size() - 1;
  s = u - static_cast<double>(i);
  return i;
}

Point CurveGamma::point(double t) const {
  if (circle_) {
    const double th = kTwoPi * t;
    return {center_[0] + radius_ * std::cos(th), center_[1] + radius_ * std::sin(th)};
  }
  double s;
  const auto i = segment(t, s);
  const auto j = (i + 1) % pts_.size();
  const double a = 1.0 - s;
  Point out;
  for (int d = 0; d < 2; ++d) {
    out[d] = a * pts_[i][d] + s * pts_[j][d] +
             ((a * a * a - a) * m2_[i][d] + (s * s * s - s) * m2_[j][d]) / 6.0;
  }
  return out;
}

Point CurveGamma::tangent(double t) const {
  if (circle_) {
    const double th = kTwoPi * t;
    return {-kTwoPi * radius_ * std::sin(th), kTwoPi * radius_ * std::cos(th)};
  }
  double s;
  const auto i = segment(t, s);
  const auto j = (i + 1) % pts_.size();
  const double a = 1.0 - s;
  const double scale = static_cast<double>(pts_.size());
  Point out;
  for (int d = 0; d < 2; ++d) {
    const double ds = pts_[j][d] - pts_[i][d] +
                      ((-3.0 * a * a + 1.0) * m2_[i][d] + (3.0 * s * s - 1.0) * m2_[j][d]) / 6.0;
    out[d] = ds * scale;
  }
  return out;
}

Point CurveGamma::second_derivative(double t) const {
  if (circle_) {
    const double th = kTwoPi * t;
    const double k = kTwoPi * kTwoPi * radius_;
    return {-k * std::cos(th), -k * std::sin(th)};
  }
  double s;
  const auto i = segment(t, s);
  const auto j = (i + 1) % pts_.size();
  const double scale = static_cast<double>(pts_.size());
  Point out;
  for (int d = 0; d < 2; ++d) out[d] = ((1.0 - s) * m2_[i][d] + s * m2_[j][d]) * scale * scale;
  return out;
}

double CurveGamma::speed(double t) const { return norm(tangent(t)); }

double CurveGamma::curvature(double t) const {
  if (circle_) return 1.0 / radius_;
  const auto d1 = tangent(t);
  const auto d2 = second_derivative(t);
  const double sp = norm(d1);
  return (d1[0] * d2[1] - d1[1] * d2[0]) / (sp * sp * sp);
}

Point CurveGamma::normal(double t) const {
  const auto d1 = tangent(t);
  const double sp = norm(d1);
  return {d1[1] / sp, -d1[0] / sp};
}

std::vector<CurveGamma::Node> CurveGamma::quadrature(std::size_t panels) const {
  if (panels == 0) throw Error(ErrorKind::InvalidArgument, "quadrature needs at least one panel");
  const auto& g = detail::gauss16();
  std::vector<Node> nodes;
  nodes.reserve(panels * 16);
  const double width = 1.0 / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = (static_cast<double>(p) + 0.5) * width;
    for (std::size_t q = 0; q < 16; ++q) {
      const double t = mid + 0.5 * width * g.x[q];
      nodes.push_back({point(t), 0.5 * width * g.w[q] * speed(t), t});
    }
  }
  return nodes;
}

double CurveGamma::length() const {
  if (circle_) return kTwoPi * radius_;
  const std::size_t panels = 8 * pts_.size();
  double sum = 0.0;
  for (const auto& nd : quadrature(panels)) sum += nd.weight;
  return sum;
}

double CurveGamma::max_curvature() const {
  if (circle_) return 1.0 / radius_;
  double k = 0.0;
  const std::size_t samples = 64 * pts_.size();
  for (std::size_t i = 0; i < samples; ++i) {
    k = std::max(k, std::abs(curvature(static_cast<double>(i) / static_cast<double>(samples))));
  }
  return k;
}

std::array<double, 4> CurveGamma::bounds() const {
  if (circle_) {
    return {center_[0] - radius_, center_[1] - radius_, center_[0] + radius_, center_[1] + radius_};
  }
  std::array<double, 4> b{1e300, 1e300, -1e300, -1e300};
  const std::size_t samples = 64 * pts_.size();
  for (std::size_t i = 0; i < samples; ++i) {
    const auto p = point(static_cast<double>(i) / static_cast<double>(samples));
    b[0] = std::min(b[0], p[0]);
    b[1] = std::min(b[1], p[1]);
    b[2] = std::max(b[2], p[0]);
    b[3] = std::max(b[3], p[1]);
  }
  // cubic overshoot between samples is O(h^2 * curvature); pad slightly
  const double pad = 1e-3;
  return {b[0] - pad, b[1] - pad, b[2] + pad, b[3] + pad};
}

CurveGamma::Projection CurveGamma::project(const Point& x) const {
  if (circle_) {
    const Point d{x[0] - center_[0], x[1] - center_[1]};
    const double rho = norm(d);
    double t = rho > 0.0 ? std::atan2(d[1], d[0]) / kTwoPi : 0.0;
    t = wrap_unit(t);
    const double dist = std::abs(rho - radius_);
    return {t, point(t), dist, rho > radius_ ? 1 : -1};
  }
  // Coarse scan, then Newton on g(t) = (gamma(t) - x) . gamma'(t) from the best few seeds.
  const std::size_t samples = 32 * pts_.size();
  std::vector<std::pair<double, double>> seeds;
  seeds.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(samples);
    const auto p = point(t);
    seeds.emplace_back(std::hypot(p[0] - x[0], p[1] - x[1]), t);
  }
  std::partial_sort(seeds.begin(), seeds.begin() + 3, seeds.end());
  const double dt = 1.0 / static_cast<double>(samples);
  double best_t = seeds[0].second;
  double best_d = seeds[0].first;
  for (int s = 0; s < 3; ++s) {
    double lo = seeds[s].second - 2.0 * dt;
    double hi = seeds[s].second + 2.0 * dt;
    double t = seeds[s].second;
    for (int it = 0; it < 60; ++it) {
      const auto p = point(t);
      const auto d1 = tangent(t);
      const auto d2 = second_derivative(t);
      const Point r{p[0] - x[0], p[1] - x[1]};
      const double g = dot(r, d1);
      const double gp = dot(d1, d1) + dot(r, d2);
      double next = gp > 0.0 ? t - g / gp : 0.5 * (lo + hi);
      if (next <= lo || next >= hi) next = 0.5 * (lo + hi);
      if (g > 0.0) hi = t; else lo = t;
      if (std::abs(next - t) < 1e-16) {
        t = next;
        break;
      }
      t = next;
    }
    const auto p = point(t);
    const double dd = std::hypot(p[0] - x[0], p[1] - x[1]);
    if (dd < best_d) {
      best_d = dd;
      best_t = t;
    }
  }
  best_t = wrap_unit(best_t);
  const auto foot = point(best_t);
  const auto nrm = normal(best_t);
  const double side = (x[0] - foot[0]) * nrm[0] + (x[1] - foot[1]) * nrm[1];
  return {best_t, foot, best_d, side > 0.0 ? 1 : -1};
}

CurveGamma CurveGamma::translated(Point shift) const {
  if (circle_) return circle({center_[0] + shift[0], center_[1] + shift[1]}, radius_);
  auto pts = pts_;
  for (auto& p : pts) {
    p[0] += shift[0];
    p[1] += shift[1];
  }
  return spline(std::move(pts));
}

}  // namespace fracpm
