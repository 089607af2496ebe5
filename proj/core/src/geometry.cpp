#include "fracpm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fracpm/error.hpp"
#include "fracpm/spectral.hpp"

namespace fracpm {

namespace {

// x - a reduced to [-1, 1).
double periodic_offset(double x, double a) {
  double d = std::fmod(x - a + 1.0, 2.0);
  if (d < 0.0) d += 2.0;
  return d - 1.0;
}

double wrap_coord(double x) {
  double r = std::fmod(x + 1.0, 2.0);
  if (r < 0.0) r += 2.0;
  if (r >= 2.0) r = 0.0;
  return r - 1.0;
}

double box_distance(const std::array<double, 4>& b, const Point& x) {
  const double dx = std::max({b[0] - x[0], 0.0, x[0] - b[2]});
  const double dy = std::max({b[1] - x[1], 0.0, x[1] - b[3]});
  return std::hypot(dx, dy);
}

}  // namespace

JumpSet JumpSet::line(std::vector<double> points, std::vector<double> values) {
  if (points.size() < 2) throw Error(ErrorKind::Geometry, "a 1D jump set needs at least two points");
  if (points.size() != values.size()) {
    throw Error(ErrorKind::Geometry, "1D jump set needs one value per interval (as many as points)");
  }
  for (double& a : points) {
    if (!std::isfinite(a)) throw Error(ErrorKind::Geometry, "non-finite jump location");
    a = wrap_coord(a);
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorKind::Geometry, "non-finite component value");
  }
  // keep values attached to the interval that starts at each point
  std::vector<std::size_t> order(points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return points[a] < points[b]; });
  JumpSet js;
  js.dim_ = 1;
  for (auto i : order) {
    js.points_.push_back(points[i]);
    js.values_.push_back(values[i]);
  }
  for (std::size_t i = 0; i + 1 < js.points_.size(); ++i) {
    if (js.points_[i + 1] - js.points_[i] <= 0.0) {
      throw Error(ErrorKind::Geometry, "jump locations must be distinct modulo 2");
    }
  }
  return js;
}

JumpSet JumpSet::plane(std::vector<CurveGamma> curves, std::vector<double> inside_values,
                       double outside_value) {
  if (curves.empty()) throw Error(ErrorKind::Geometry, "a 2D jump set needs at least one curve");
  if (curves.size() != inside_values.size()) {
    throw Error(ErrorKind::Geometry, "one interior value per curve is required");
  }
  for (double v : inside_values) {
    if (!std::isfinite(v)) throw Error(ErrorKind::Geometry, "non-finite component value");
  }
  if (!std::isfinite(outside_value)) throw Error(ErrorKind::Geometry, "non-finite exterior value");
  for (std::size_t i = 0; i < curves.size(); ++i) {
    for (std::size_t j = 0; j < curves.size(); ++j) {
      if (i == j) continue;
      const auto p = curves[j].point(0.0);
      const auto pr = curves[i].project(p);
      if (pr.side < 0 || pr.distance == 0.0) {
        throw Error(ErrorKind::Geometry, "jump curves must be disjoint and not nested");
      }
    }
  }
  JumpSet js;
  js.dim_ = 2;
  js.curves_ = std::move(curves);
  js.values_ = std::move(inside_values);
  js.outside_ = outside_value;
  return js;
}

JumpSet JumpSet::centered_interval() { return line({-0.5, 0.5}, {1.0, 0.0}); }

JumpSet JumpSet::centered_disc(double radius) {
  return plane({CurveGamma::circle({0.0, 0.0}, radius)}, {1.0}, 0.0);
}

std::vector<double> JumpSet::jump_heights() const {
  std::vector<double> s;
  if (dim_ == 1) {
    const auto m = points_.size();
    for (std::size_t j = 0; j < m; ++j) s.push_back(values_[j] - values_[(j + m - 1) % m]);
  } else {
    for (double v : values_) s.push_back(v - outside_);
  }
  return s;
}

std::size_t JumpSet::component_count() const noexcept {
  return dim_ == 1 ? points_.size() : curves_.size() + 1;
}

std::size_t JumpSet::component_of(const Point& x) const {
  if (dim_ == 1) {
    const double y = wrap_coord(x[0]);
    const auto it = std::upper_bound(points_.begin(), points_.end(), y);
    if (it == points_.begin()) return points_.size() - 1;
    return static_cast<std::size_t>(it - points_.begin()) - 1;
  }
  const Point y{wrap_coord(x[0]), wrap_coord(x[1])};
  for (std::size_t i = 0; i < curves_.size(); ++i) {
    const auto b = curves_[i].bounds();
    if (y[0] < b[0] || y[0] > b[2] || y[1] < b[1] || y[1] > b[3]) continue;
    if (curves_[i].contains(y)) return i;
  }
  return curves_.size();
}

double JumpSet::step_value(const Point& x) const {
  const auto c = component_of(x);
  if (dim_ == 1) return values_[c];
  return c < curves_.size() ? values_[c] : outside_;
}

JumpSet JumpSet::translated(Point shift) const {
  if (dim_ == 1) {
    auto pts = points_;
    for (auto& a : pts) a += shift[0];
    return line(std::move(pts), values_);
  }
  std::vector<CurveGamma> cs;
  for (const auto& c : curves_) cs.push_back(c.translated(shift));
  return plane(std::move(cs), values_, outside_);
}

JumpSet::Nearest JumpSet::nearest(const Point& x) const {
  Nearest best{std::numeric_limits<double>::infinity(), 0, {0.0, 0.0}, {1.0, 0.0}, 0.0};
  if (dim_ == 1) {
    for (std::size_t j = 0; j < points_.size(); ++j) {
      const double off = periodic_offset(x[0], points_[j]);
      if (std::abs(off) < best.distance) best = {std::abs(off), j, {x[0] - off, 0.0}, {1.0, 0.0}, 0.0};
    }
    return best;
  }
  for (std::size_t i = 0; i < curves_.size(); ++i) {
    const auto b = curves_[i].bounds();
    for (int mx = -1; mx <= 1; ++mx) {
      for (int my = -1; my <= 1; ++my) {
        // image of x near the reference cell
        const Point shift{2.0 * mx - 2.0 * std::round(x[0] / 2.0), 2.0 * my - 2.0 * std::round(x[1] / 2.0)};
        const Point y{x[0] + shift[0], x[1] + shift[1]};
        if (box_distance(b, y) >= best.distance) continue;
        const auto pr = curves_[i].project(y);
        if (pr.distance < best.distance) {
          best = {pr.distance, i, {pr.foot[0] - shift[0], pr.foot[1] - shift[1]}, curves_[i].normal(pr.t), pr.t};
        }
      }
    }
  }
  return best;
}

void JumpSet::require_clearance(double delta) const {
  if (!(delta > 0.0) || delta > 0.5) {
    throw Error(ErrorKind::Geometry, "tube radius delta must lie in (0, 1/2]");
  }
  const double tube = 2.0 * delta;
  if (dim_ == 1) {
    for (double a : points_) {
      if (a - tube <= -1.0 || a + tube >= 1.0) {
        throw Error(ErrorKind::Geometry, "2*delta tube around jump " + std::to_string(a) + " leaves the open cube");
      }
    }
    const auto m = points_.size();
    for (std::size_t j = 0; j < m; ++j) {
      double gap = points_[(j + 1) % m] - points_[j];
      if (gap <= 0.0) gap += 2.0;
      if (gap <= 2.0 * tube) throw Error(ErrorKind::Geometry, "2*delta tubes of adjacent jumps overlap");
    }
    return;
  }
  for (std::size_t i = 0; i < curves_.size(); ++i) {
    const auto& c = curves_[i];
    const auto b = c.bounds();
    if (b[0] - tube <= -1.0 || b[1] - tube <= -1.0 || b[2] + tube >= 1.0 || b[3] + tube >= 1.0) {
      throw Error(ErrorKind::Geometry, "2*delta tube around curve " + std::to_string(i) + " leaves the open cube");
    }
    if (tube * c.max_curvature() >= 1.0) {
      throw Error(ErrorKind::Geometry, "2*delta exceeds the curvature radius of curve " + std::to_string(i));
    }
    for (std::size_t j = i + 1; j < curves_.size(); ++j) {
      double gap = std::numeric_limits<double>::infinity();
      for (const auto& nd : c.quadrature(64)) gap = std::min(gap, curves_[j].project(nd.y).distance);
      if (gap <= 2.0 * tube) throw Error(ErrorKind::Geometry, "2*delta tubes of two curves overlap");
    }
  }
}

double distance_to_gamma(const Point& x, const JumpSet& js) { return js.nearest(x).distance; }

double weight_from_distance(double dist, double delta) {
  if (dist <= delta) return dist;
  if (dist >= 2.0 * delta) return 1.0;
  const double t = (dist - delta) / delta;
  const double t4 = t * t * t * t;
  const double s = t4 * (35.0 + t * (-84.0 + t * (70.0 - 20.0 * t)));
  return (1.0 - s) * dist + s;
}

double weight_d(const Point& x, const JumpSet& js, double delta) {
  js.require_clearance(delta);
  return weight_from_distance(distance_to_gamma(x, js), delta);
}

WeightField::WeightField(const PeriodicGrid& grid, const JumpSet& js, double delta)
    : delta_(delta), field_(grid) {
  if (grid.dim() != js.dim()) throw Error(ErrorKind::InvalidArgument, "grid and jump set dimensions differ");
  js.require_clearance(delta);
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = weight_from_distance(distance_to_gamma(grid.node(i), js), delta);
    if (!(v[i] > 0.0)) {
      throw Error(ErrorKind::Geometry, "grid node " + std::to_string(i) + " lies on Gamma");
    }
  }
  field_ = ScalarField(grid, std::move(v));
}

WeightedNorm weighted_norm(const ScalarField& u, int k, double p_exp, double theta, const WeightField& w) {
  if (!(u.grid() == w.grid())) throw Error(ErrorKind::InvalidArgument, "field and weight grids differ");
  if (k < 0 || k > 2) throw Error(ErrorKind::InvalidArgument, "weighted_norm supports k = 0, 1, 2");
  if (!(p_exp > 1.0)) throw Error(ErrorKind::InvalidArgument, "weighted_norm needs p > 1");
  if (!std::isfinite(theta)) throw Error(ErrorKind::InvalidArgument, "non-finite weight exponent");
  const auto& grid = u.grid();
  const auto size = grid.size();
  const double cell = std::pow(grid.spacing(), grid.dim());
  const double floor = 0.5 * grid.spacing();
  const bool exclude = theta <= -2.0;

  // |grad^i u| per node for i = 0..k
  std::vector<std::vector<double>> mag(k + 1, std::vector<double>(size));
  for (std::size_t j = 0; j < size; ++j) mag[0][j] = std::abs(u[j]);
  if (k >= 1) {
    SpectralWorkspace ws(grid);
    std::vector<double> gx(size), gy(grid.dim() == 2 ? size : 0);
    ws.gradient(u.values(), gx, gy);
    for (std::size_t j = 0; j < size; ++j) mag[1][j] = grid.dim() == 1 ? std::abs(gx[j]) : std::hypot(gx[j], gy[j]);
    if (k == 2) {
      std::vector<double> hxx(size), hxy(size), hyy(size);
      ws.derivative(gx, 0, hxx);
      if (grid.dim() == 1) {
        for (std::size_t j = 0; j < size; ++j) mag[2][j] = std::abs(hxx[j]);
      } else {
        ws.derivative(gx, 1, hxy);
        ws.derivative(gy, 1, hyy);
        for (std::size_t j = 0; j < size; ++j) {
          mag[2][j] = std::sqrt(hxx[j] * hxx[j] + 2.0 * hxy[j] * hxy[j] + hyy[j] * hyy[j]);
        }
      }
    }
  }

  double total = 0.0;
  std::size_t excluded = 0;
  const auto& d = w.values();
  for (std::size_t j = 0; j < size; ++j) {
    if (exclude && d[j] < floor) {
      ++excluded;
      continue;
    }
    for (int i = 0; i <= k; ++i) {
      const double term = std::pow(std::pow(d[j], theta + i) * mag[i][j], p_exp);
      if (!std::isfinite(term)) {
        throw Error(ErrorKind::NonFinite, "non-finite weighted integrand at node " + std::to_string(j) +
                                              " (weight exponent too negative for this field?)");
      }
      total += term * cell;
    }
  }
  return {std::pow(total, 1.0 / p_exp), excluded};
}

ExponentFit exponent_fit(const std::vector<std::pair<double, double>>& values) {
  if (values.size() < 8) throw Error(ErrorKind::InvalidArgument, "exponent_fit needs at least 8 samples");
  double dmin = std::numeric_limits<double>::infinity(), dmax = 0.0;
  for (const auto& [d, f] : values) {
    if (!(d > 0.0) || !(f > 0.0) || !std::isfinite(d) || !std::isfinite(f)) {
      throw Error(ErrorKind::InvalidArgument, "exponent_fit needs positive finite data");
    }
    dmin = std::min(dmin, d);
    dmax = std::max(dmax, d);
  }
  if (dmax / dmin < 100.0 * (1.0 - 1e-12)) {
    throw Error(ErrorKind::InvalidArgument, "exponent_fit samples must span at least two decades");
  }
  const double n = static_cast<double>(values.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [d, f] : values) {
    sx += std::log(d);
    sy += std::log(f);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [d, f] : values) {
    const double a = std::log(d) - mx, b = std::log(f) - my;
    sxx += a * a;
    sxy += a * b;
    syy += b * b;
  }
  const double slope = sxy / sxx;
  const double r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return {slope, my - slope * mx, r2, values.size()};
}

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) {
    throw Error(ErrorKind::InvalidArgument, "log_spaced needs 0 < lo < hi and count >= 2");
  }
  std::vector<double> out(count);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<Probe> normal_probes(const JumpSet& js, std::size_t component, double t,
                                 const std::vector<double>& distances) {
  std::vector<Probe> out;
  if (js.dim() == 1) {
    if (component >= js.points().size()) throw Error(ErrorKind::InvalidArgument, "no such jump");
    const double a = js.points()[component];
    const double dir = js.jump_heights()[component] > 0.0 ? 1.0 : -1.0;
    for (double d : distances) out.push_back({{a + dir * d, 0.0}, d});
    return out;
  }
  if (component >= js.curves().size()) throw Error(ErrorKind::InvalidArgument, "no such curve");
  const auto& c = js.curves()[component];
  const auto foot = c.point(t);
  const auto n = c.normal(t);
  const double dir = js.jump_heights()[component] > 0.0 ? -1.0 : 1.0;
  for (double d : distances) out.push_back({{foot[0] + dir * d * n[0], foot[1] + dir * d * n[1]}, d});
  return out;
}

}  // namespace fracpm
