#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fracpm/error.hpp"
#include "fracpm/geometry.hpp"
#include "fracpm/grid.hpp"
#include "fracpm/spectral.hpp"

namespace fracpm {

enum class Scheme { SemiImplicit, Explicit };

struct SolverConfig {
  double dt = 1e-3;
  double T = 1.0;
  Scheme scheme = Scheme::SemiImplicit;
  double tolerance = 1e-12;       // relative residual of the linear solve
  std::size_t snapshot_stride = 0;  // 0: initial and final state only
  std::size_t max_iterations = 1000;

  /// Throws Config on dt, T <= 0 or tolerance outside (0, 1e-6].
  void validate() const;
  [[nodiscard]] std::size_t steps() const;
};

/// Nodes where alpha falls below this are floored to it.
inline constexpr double kAlphaFloor = 1e-14;

struct SingularSample {
  ScalarField S;
  JumpSet js;  // the set actually sampled (possibly shifted by h/4)
  bool shifted = false;
  std::string warning;
};

/// S = frac field of H on the grid nodes, after aligning Gamma away from nodes.
[[nodiscard]] SingularSample precompute_singular_field(const JumpSet& js, const FracParams& p,
                                                       const PeriodicGrid& grid);

struct StepStats {
  std::size_t iterations = 0;
  double residual = 0.0;
};

/// One time step of w_t = div(alpha(H+w) grad w). Holds transform buffers.
class Stepper {
 public:
  Stepper(ScalarField S, const FracParams& p, SolverConfig cfg);

  [[nodiscard]] const PeriodicGrid& grid() const noexcept { return S_.grid(); }
  [[nodiscard]] const SolverConfig& config() const noexcept { return cfg_; }

  /// alpha(H+w) = 1/(1+(S+V)^2), V the spectral frac field of w, floored.
  void coefficient(std::span<const double> w, std::span<double> alpha);
  /// Advances w in place; throws LinearAlgebra when the solve stalls.
  StepStats advance(std::vector<double>& w);
  /// One step with a prescribed (positive) coefficient instead of alpha(H+w).
  StepStats advance_with(std::vector<double>& w, std::span<const double> alpha);
  /// a(w,w) with the current coefficient.
  [[nodiscard]] double energy(std::span<const double> w, std::span<const double> alpha);

 private:
  void apply(std::span<const double> alpha, std::span<const double> x, std::span<double> out);
  StepStats solve_frozen(std::vector<double>& w);

  ScalarField S_;
  double eps_;
  SolverConfig cfg_;
  SpectralWorkspace ws_;
  std::vector<double> alpha_, v_, r_, z_, p_, q_, precond_, gx_, gy_;
};

[[nodiscard]] ScalarField step(const ScalarField& w, const ScalarField& S, const FracParams& p,
                               const SolverConfig& cfg);

struct Trajectory {
  std::vector<double> times;
  std::vector<double> l2_w;
  std::vector<double> linf_u;
  std::vector<double> mean_u;
  std::vector<double> energy;
  std::vector<std::size_t> iterations;
  std::vector<double> snapshot_times;
  std::vector<ScalarField> snapshots;  // w, never u
  JumpSet js;
  bool shifted = false;
  std::string warning;
};

/// Raised by the blow-up detector; carries everything recorded so far.
class EvolutionAborted : public Error {
 public:
  EvolutionAborted(const std::string& what, Trajectory partial)
      : Error(ErrorKind::BlowUp, what), partial_(std::move(partial)) {}
  [[nodiscard]] const Trajectory& partial() const noexcept { return partial_; }

 private:
  Trajectory partial_;
};

[[nodiscard]] Trajectory evolve(const ScalarField& w0, const JumpSet& js, const FracParams& p,
                                const SolverConfig& cfg);
/// Same, with S already sampled (the jump set must be the aligned one).
[[nodiscard]] Trajectory evolve(const ScalarField& w0, const SingularSample& S, const FracParams& p,
                                const SolverConfig& cfg);

struct DecayFit {
  double rate;
  double r2;
  std::size_t samples;
};

/// -slope of log ||w||_2 on [t0, t1]. Refuses (InvalidArgument, with r^2 in the
/// message) when the norm is not strictly decreasing on the window.
[[nodiscard]] DecayFit decay_rate_fit(const Trajectory& traj, double t0, double t1);

}  // namespace fracpm
