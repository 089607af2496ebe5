#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <string>
#include <vector>

#include "fracpm/geometry.hpp"
#include "fracpm/grid.hpp"

namespace fracpm {

/// Conservative finite-difference discretization of div(alpha grad u):
/// (A u)_j = sum_axes [a_{j+1/2}(u_{j+1}-u_j) - a_{j-1/2}(u_j-u_{j-1})] / h^2.
struct LinearOperatorMatrix {
  PeriodicGrid grid;
  Eigen::SparseMatrix<double> A;      // the operator itself (negative semidefinite)
  std::vector<std::vector<double>> face_alpha;  // per axis, face j+1/2 after node j
  JumpSet js;                         // jump set actually used (after alignment)
  bool shifted = false;
  std::string provenance;

  [[nodiscard]] double norm_inf() const;
};

/// Assembles from face coefficients directly (one vector per axis).
[[nodiscard]] LinearOperatorMatrix assemble_from_faces(const PeriodicGrid& grid,
                                                       std::vector<std::vector<double>> face_alpha,
                                                       const JumpSet& js);
/// alpha = 1/(1+S^2) of the step datum at the face midpoints. Gamma is shifted by
/// h/4 when it meets a node or a face midpoint.
[[nodiscard]] LinearOperatorMatrix assemble(const JumpSet& js, const FracParams& p, const PeriodicGrid& grid);

/// One indicator vector per connected component of Q \ Gamma, on the grid nodes.
[[nodiscard]] std::vector<std::vector<double>> component_indicators(const JumpSet& js, const PeriodicGrid& grid);

struct SpectrumReport {
  std::vector<double> eigenvalues;  // of -A, ascending (all, or the lowest ones on the sparse path)
  std::size_t near_null = 0;        // eigenvalues <= 1e-10 ||A||
  std::size_t components = 0;
  double gap = 0.0;                 // deflated gap gamma
  std::vector<double> deflated;     // lowest deflated eigenvalues, ascending
  std::vector<double> overlaps;     // per component: norm of the indicator's projection onto the lowest modes
  double min_eigenvalue = 0.0;
  double norm = 0.0;
  bool dense = true;
};

enum class EigenPath { Auto, Dense, Sparse };

/// Spectrum of -A and the gap after projecting out the component indicators.
/// Throws LinearAlgebra when an indicator is empty on the grid (component not resolved).
[[nodiscard]] SpectrumReport spectrum_deflated(const LinearOperatorMatrix& A, EigenPath path = EigenPath::Auto,
                                               std::size_t sparse_count = 10);
/// Same with explicit deflation vectors; they must be mutually orthogonal
/// (disjoint supports, for instance).
[[nodiscard]] SpectrumReport spectrum_deflated(const LinearOperatorMatrix& A,
                                               const std::vector<std::vector<double>>& indicators,
                                               EigenPath path = EigenPath::Auto, std::size_t sparse_count = 10);

/// int alpha grad u . grad v dx with spectral gradients and the trapezoid rule.
[[nodiscard]] double form_value(const ScalarField& u, const ScalarField& v, const ScalarField& alpha);

/// C = 1/sqrt(gamma).
[[nodiscard]] double poincare_constant(const SpectrumReport& report);
[[nodiscard]] double poincare_constant(const LinearOperatorMatrix& A);

struct PoincareAudit {
  double constant;
  double min_slack;  // min over samples of C^2 (-u.Au) - |u|^2, relative to |u|^2
  std::size_t samples;
};
/// Random vectors orthogonal to the indicators must satisfy |u|^2 <= C^2 (-u.Au).
[[nodiscard]] PoincareAudit poincare_audit(const LinearOperatorMatrix& A, double constant, std::size_t samples,
                                           std::uint64_t seed);

/// Largest excursion of (I - dt A)^{-1} u outside [min u, max u] over random u.
[[nodiscard]] double max_principle_violation(const LinearOperatorMatrix& A, double dt, std::size_t samples,
                                             std::uint64_t seed);

/// (4/h^2) sin^2(pi k h / 2) per axis-summed mode, ascending: the alpha = 1 spectrum.
[[nodiscard]] std::vector<double> fd_laplacian_eigenvalues(const PeriodicGrid& grid);

}  // namespace fracpm
