#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fracpm/geometry.hpp"
#include "fracpm/oracles.hpp"

namespace fracpm {

/// A jump set placed relative to a grid so that no node and no finite-difference
/// face midpoint lies on Gamma.
struct GridAlignment {
  JumpSet js;
  bool shifted = false;
  Point shift{0.0, 0.0};
  std::string message;
};

/// Returns the set unchanged when it avoids all nodes and face midpoints
/// (within 1e-6 h); otherwise the rigid translation by h/4 per axis.
[[nodiscard]] GridAlignment align_to_grid(const JumpSet& js, const PeriodicGrid& grid);

/// Throws Geometry unless the delta-tube spans at least 8 grid spacings.
void require_resolved(const PeriodicGrid& grid, double delta);

/// The oracle field S of the step datum: d^{1-eps}H in 1D, |k|^-eps |grad H| in 2D.
class SingularField {
 public:
  SingularField(const JumpSet& js, const FracParams& p);

  [[nodiscard]] int dim() const noexcept { return js_.dim(); }
  [[nodiscard]] const JumpSet& jump_set() const noexcept { return js_; }
  [[nodiscard]] double epsilon() const noexcept { return eps_; }

  [[nodiscard]] double operator()(const Point& x) const;
  [[nodiscard]] std::vector<double> sample(const PeriodicGrid& grid) const;

  /// Centered differences with the given step.
  [[nodiscard]] AlphaDerivatives alpha_derivatives(const Point& x, double step) const;
  [[nodiscard]] FieldDerivatives derivatives(const Point& x, double step) const;

 private:
  JumpSet js_;
  double eps_;
  std::unique_ptr<StepField1D> f1_;
  std::unique_ptr<StepField2D> f2_;
};

/// alpha, grad alpha and Laplacian of alpha for H at x, differences with step
/// d(x)/8. With `p.exclude_half` set, eps = 1/2 is rejected.
[[nodiscard]] AlphaDerivatives alpha_H_and_derivatives(const SingularField& S, const FracParams& p, const Point& x);

}  // namespace fracpm
