#include "fracpm/singular_field.hpp"

#include <cmath>
#include <sstream>

#include "fracpm/error.hpp"

namespace fracpm {

namespace {

bool touches_gamma(const JumpSet& js, const PeriodicGrid& grid) {
  const double h = grid.spacing();
  const double tol = 1e-6 * h;
  if (js.dim() == 1) {
    for (std::size_t j = 0; j < grid.n(); ++j) {
      const double x = grid.coord(j);
      if (distance_to_gamma({x, 0.0}, js) < tol || distance_to_gamma({x + 0.5 * h, 0.0}, js) < tol) return true;
    }
    return false;
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto x = grid.node(i);
    const double d = distance_to_gamma(x, js);
    // face midpoints are within h/2 of the node
    if (d > h) continue;
    if (d < tol || distance_to_gamma({x[0] + 0.5 * h, x[1]}, js) < tol ||
        distance_to_gamma({x[0], x[1] + 0.5 * h}, js) < tol) {
      return true;
    }
  }
  return false;
}

}  // namespace

GridAlignment align_to_grid(const JumpSet& js, const PeriodicGrid& grid) {
  if (js.dim() != grid.dim()) throw Error(ErrorKind::InvalidArgument, "grid and jump set dimensions differ");
  if (!touches_gamma(js, grid)) return {js, false, {0.0, 0.0}, ""};
  const double q = 0.25 * grid.spacing();
  const Point shift{q, js.dim() == 2 ? q : 0.0};
  auto moved = js.translated(shift);
  if (touches_gamma(moved, grid)) {
    throw Error(ErrorKind::Geometry, "Gamma meets grid nodes or faces even after an h/4 shift");
  }
  std::ostringstream msg;
  msg << "Gamma passed through grid nodes or faces; translated by h/4 = " << q << " per axis";
  return {std::move(moved), true, shift, msg.str()};
}

void require_resolved(const PeriodicGrid& grid, double delta) {
  if (2.0 * delta < 8.0 * grid.spacing()) {
    std::ostringstream msg;
    msg << "grid with n = " << grid.n() << " does not resolve the delta-tube (delta = " << delta
        << " needs n >= " << std::ceil(8.0 / delta) << ")";
    throw Error(ErrorKind::Geometry, msg.str());
  }
}

SingularField::SingularField(const JumpSet& js, const FracParams& p) : js_(js), eps_(p.epsilon) {
  const auto heights = js.jump_heights();
  if (js.dim() == 1) {
    f1_ = std::make_unique<StepField1D>(js.points(), heights, p);
  } else {
    std::vector<double> w;
    for (double s : heights) w.push_back(std::abs(s));
    f2_ = std::make_unique<StepField2D>(js.curves(), w, p);
  }
}

double SingularField::operator()(const Point& x) const { return f1_ ? (*f1_)(x[0]) : (*f2_)(x); }

std::vector<double> SingularField::sample(const PeriodicGrid& grid) const {
  if (grid.dim() != dim()) throw Error(ErrorKind::InvalidArgument, "grid and jump set dimensions differ");
  if (f2_) return f2_->sample(grid);
  std::vector<double> out(grid.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = (*f1_)(grid.coord(j));
  return out;
}

AlphaDerivatives SingularField::alpha_derivatives(const Point& x, double step) const {
  return alpha_derivatives_fd(*this, dim(), x, step);
}

FieldDerivatives SingularField::derivatives(const Point& x, double step) const {
  return field_derivatives_fd(*this, dim(), x, step);
}

AlphaDerivatives alpha_H_and_derivatives(const SingularField& S, const FracParams& p, const Point& x) {
  p.require_not_half();
  const double d = distance_to_gamma(x, S.jump_set());
  if (!(d > 0.0)) throw Error(ErrorKind::Geometry, "alpha derivatives requested on Gamma");
  return S.alpha_derivatives(x, std::min(d, 1.0) / 8.0);
}

}  // namespace fracpm
