#include "fracpm/linear.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fracpm/error.hpp"
#include "fracpm/singular_field.hpp"
#include "fracpm/spectral.hpp"

namespace fracpm {

namespace {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using Sp = Eigen::SparseMatrix<double>;

Mat indicator_basis(const PeriodicGrid& grid, const std::vector<std::vector<double>>& ind) {
  if (ind.empty()) throw Error(ErrorKind::InvalidArgument, "deflation needs at least one vector");
  Mat q(static_cast<Eigen::Index>(grid.size()), static_cast<Eigen::Index>(ind.size()));
  for (std::size_t c = 0; c < ind.size(); ++c) {
    if (ind[c].size() != grid.size()) throw Error(ErrorKind::InvalidArgument, "deflation vector has the wrong length");
    Vec v = Eigen::Map<const Vec>(ind[c].data(), static_cast<Eigen::Index>(ind[c].size()));
    const double nrm = v.norm();
    if (nrm == 0.0) {
      throw Error(ErrorKind::LinearAlgebra,
                  "deflation space is rank deficient: component " + std::to_string(c) + " holds no grid node");
    }
    q.col(static_cast<Eigen::Index>(c)) = v / nrm;
  }
  return q;
}

// Rayleigh-Ritz on the current block; returns ascending Ritz values and rotates x.
Vec rayleigh_ritz(const Sp& negA, Mat& x) {
  Eigen::HouseholderQR<Mat> qr(x);
  x = qr.householderQ() * Mat::Identity(x.rows(), x.cols());
  const Mat h = x.transpose() * (negA * x);
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.transpose()));
  x = x * es.eigenvectors();
  return es.eigenvalues();
}

// Block inverse iteration: `solve` applies the inverse of the shifted operator.
template <typename Solve, typename Project>
Vec subspace_iteration(const Sp& negA, Mat x, Solve&& solve, Project&& project, Mat* vectors) {
  project(x);
  Vec prev = rayleigh_ritz(negA, x);
  for (int it = 0; it < 400; ++it) {
    x = solve(x);
    project(x);
    const Vec ritz = rayleigh_ritz(negA, x);
    const double change = (ritz - prev).cwiseAbs().maxCoeff();
    prev = ritz;
    if (it > 3 && change <= 1e-13 * std::max(1.0, ritz.cwiseAbs().maxCoeff())) break;
  }
  if (vectors) *vectors = x;
  return prev;
}

}  // namespace

double LinearOperatorMatrix::norm_inf() const {
  Vec rows = Vec::Zero(A.rows());
  for (int k = 0; k < A.outerSize(); ++k)
    for (Sp::InnerIterator it(A, k); it; ++it) rows(it.row()) += std::abs(it.value());
  return rows.maxCoeff();
}

LinearOperatorMatrix assemble_from_faces(const PeriodicGrid& grid, std::vector<std::vector<double>> face_alpha,
                                         const JumpSet& js) {
  if (face_alpha.size() != static_cast<std::size_t>(grid.dim())) {
    throw Error(ErrorKind::InvalidArgument, "one face coefficient array per axis is required");
  }
  for (const auto& f : face_alpha) {
    if (f.size() != grid.size()) throw Error(ErrorKind::InvalidArgument, "face array length mismatch");
    for (double a : f) {
      if (!(a > 0.0) || !std::isfinite(a)) throw Error(ErrorKind::InvalidArgument, "face coefficients must be positive");
    }
  }
  const auto n = grid.n();
  const auto size = static_cast<Eigen::Index>(grid.size());
  const double inv_h2 = 1.0 / (grid.spacing() * grid.spacing());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(grid.size() * (2 * grid.dim() + 1));
  auto couple = [&](std::size_t i, std::size_t j, double a) {
    const double c = a * inv_h2;
    trip.emplace_back(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j), c);
    trip.emplace_back(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i), c);
    trip.emplace_back(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i), -c);
    trip.emplace_back(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j), -c);
  };
  if (grid.dim() == 1) {
    for (std::size_t j = 0; j < n; ++j) couple(j, (j + 1) % n, face_alpha[0][j]);
  } else {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        const std::size_t i = a * n + b;
        couple(i, ((a + 1) % n) * n + b, face_alpha[0][i]);
        couple(i, a * n + (b + 1) % n, face_alpha[1][i]);
      }
    }
  }
  LinearOperatorMatrix op{grid, Sp(size, size), std::move(face_alpha), js, false, "faces"};
  op.A.setFromTriplets(trip.begin(), trip.end());
  op.A.makeCompressed();
  return op;
}

LinearOperatorMatrix assemble(const JumpSet& js, const FracParams& p, const PeriodicGrid& grid) {
  const auto aligned = align_to_grid(js, grid);
  const double h = grid.spacing();
  std::vector<std::vector<double>> faces;
  for (int axis = 0; axis < grid.dim(); ++axis) {
    // S at x + (h/2) e_axis equals S for Gamma moved by -(h/2) e_axis, sampled at x.
    Point back{0.0, 0.0};
    back[axis] = -0.5 * h;
    const SingularField S(aligned.js.translated(back), p);
    auto s = S.sample(grid);
    for (auto& v : s) v = 1.0 / (1.0 + v * v);
    faces.push_back(std::move(s));
  }
  auto op = assemble_from_faces(grid, std::move(faces), aligned.js);
  op.shifted = aligned.shifted;
  op.provenance = aligned.shifted ? aligned.message : "alpha from the step-field oracle at face midpoints";
  return op;
}

std::vector<std::vector<double>> component_indicators(const JumpSet& js, const PeriodicGrid& grid) {
  std::vector<std::vector<double>> out(js.component_count(), std::vector<double>(grid.size(), 0.0));
  for (std::size_t i = 0; i < grid.size(); ++i) out[js.component_of(grid.node(i))][i] = 1.0;
  return out;
}

SpectrumReport spectrum_deflated(const LinearOperatorMatrix& op, EigenPath path, std::size_t sparse_count) {
  return spectrum_deflated(op, component_indicators(op.js, op.grid), path, sparse_count);
}

SpectrumReport spectrum_deflated(const LinearOperatorMatrix& op, const std::vector<std::vector<double>>& indicators,
                                 EigenPath path, std::size_t sparse_count) {
  const auto& grid = op.grid;
  const auto n = static_cast<Eigen::Index>(grid.size());
  const Mat q = indicator_basis(grid, indicators);
  const auto m = q.cols();
  const Sp negA = -op.A;

  SpectrumReport rep;
  rep.components = static_cast<std::size_t>(m);
  rep.norm = op.norm_inf();
  const bool dense = path == EigenPath::Dense ||
                     (path == EigenPath::Auto && (grid.dim() == 1 ? grid.size() <= 4096 : grid.size() <= 64 * 64));
  rep.dense = dense;
  const double null_tol = 1e-10 * rep.norm;

  Mat low;  // lowest m eigenvectors of -A
  if (dense) {
    const Mat M = Mat(negA);
    Eigen::SelfAdjointEigenSolver<Mat> es(M);
    if (es.info() != Eigen::Success) throw Error(ErrorKind::LinearAlgebra, "dense eigensolver failed");
    rep.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
    low = es.eigenvectors().leftCols(m);
    // P M P + c Q Q^T keeps the deflated spectrum and sends span(Q) to c.
    const Mat P = Mat::Identity(n, n) - q * q.transpose();
    const double c = 2.0 * rep.norm + 1.0;
    const Mat B = P * M * P + c * q * q.transpose();
    Eigen::SelfAdjointEigenSolver<Mat> ed(0.5 * (B + B.transpose()), Eigen::EigenvaluesOnly);
    if (ed.info() != Eigen::Success) throw Error(ErrorKind::LinearAlgebra, "deflated eigensolver failed");
    const auto keep = std::min<Eigen::Index>(n - m, static_cast<Eigen::Index>(sparse_count));
    rep.deflated.assign(ed.eigenvalues().data(), ed.eigenvalues().data() + keep);
  } else {
    const auto b = static_cast<Eigen::Index>(std::max<std::size_t>(sparse_count, static_cast<std::size_t>(m)) + 4);
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Mat x0(n, b);
    for (Eigen::Index i = 0; i < x0.size(); ++i) x0.data()[i] = uni(rng);

    // bottom of -A: shift-invert with a small positive shift
    const double sigma = 1e-6 * rep.norm;
    Sp shifted = negA;
    for (Eigen::Index i = 0; i < n; ++i) shifted.coeffRef(i, i) += sigma;
    Eigen::SimplicialLDLT<Sp> ldlt(shifted);
    if (ldlt.info() != Eigen::Success) throw Error(ErrorKind::LinearAlgebra, "sparse factorization failed");
    Mat vecs;
    const Vec ev = subspace_iteration(
        negA, x0, [&](const Mat& x) { return Mat(ldlt.solve(x)); }, [](Mat&) {}, &vecs);
    rep.eigenvalues.assign(ev.data(), ev.data() + std::min<Eigen::Index>(ev.size(), static_cast<Eigen::Index>(sparse_count)));
    low = vecs.leftCols(m);

    // deflated: bordered system [-A Q; Q^T 0] keeps iterates orthogonal to Q
    std::vector<Eigen::Triplet<double>> trip;
    for (int k = 0; k < negA.outerSize(); ++k)
      for (Sp::InnerIterator it(negA, k); it; ++it) trip.emplace_back(it.row(), it.col(), it.value());
    for (Eigen::Index c = 0; c < m; ++c) {
      for (Eigen::Index i = 0; i < n; ++i) {
        if (q(i, c) != 0.0) {
          trip.emplace_back(i, n + c, q(i, c));
          trip.emplace_back(n + c, i, q(i, c));
        }
      }
    }
    Sp K(n + m, n + m);
    K.setFromTriplets(trip.begin(), trip.end());
    Eigen::SparseLU<Sp> lu;
    lu.compute(K);
    if (lu.info() != Eigen::Success) {
      throw Error(ErrorKind::LinearAlgebra, "bordered deflation system is singular (rank-deficient deflation)");
    }
    auto project = [&](Mat& x) { x -= q * (q.transpose() * x); };
    auto solve = [&](const Mat& x) {
      Mat rhs = Mat::Zero(n + m, x.cols());
      rhs.topRows(n) = x;
      const Mat sol = lu.solve(rhs);
      return Mat(sol.topRows(n));
    };
    const Vec dv = subspace_iteration(negA, x0, solve, project, nullptr);
    rep.deflated.assign(dv.data(), dv.data() + std::min<Eigen::Index>(dv.size(), static_cast<Eigen::Index>(sparse_count)));
  }

  rep.min_eigenvalue = rep.eigenvalues.front();
  rep.near_null = static_cast<std::size_t>(
      std::count_if(rep.eigenvalues.begin(), rep.eigenvalues.end(), [&](double v) { return v <= null_tol; }));
  rep.gap = rep.deflated.front();
  for (Eigen::Index c = 0; c < m; ++c) rep.overlaps.push_back((low.transpose() * q.col(c)).norm());
  if (!(rep.gap > 0.0)) {
    throw Error(ErrorKind::LinearAlgebra, "deflated spectrum is not bounded away from zero");
  }
  return rep;
}

double form_value(const ScalarField& u, const ScalarField& v, const ScalarField& alpha) {
  if (!(u.grid() == v.grid()) || !(u.grid() == alpha.grid())) {
    throw Error(ErrorKind::InvalidArgument, "form_value fields live on different grids");
  }
  const auto gu = gradient(u);
  const auto gv = gradient(v);
  const double cell = std::pow(u.grid().spacing(), u.grid().dim());
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    double dot = 0.0;
    for (std::size_t a = 0; a < gu.size(); ++a) dot += gu[a][i] * gv[a][i];
    sum += alpha[i] * dot;
  }
  return sum * cell;
}

double poincare_constant(const SpectrumReport& report) {
  if (!(report.gap > 0.0)) throw Error(ErrorKind::LinearAlgebra, "Poincare constant needs a positive gap");
  return 1.0 / std::sqrt(report.gap);
}

double poincare_constant(const LinearOperatorMatrix& A) { return poincare_constant(spectrum_deflated(A)); }

PoincareAudit poincare_audit(const LinearOperatorMatrix& op, double constant, std::size_t samples,
                             std::uint64_t seed) {
  const Mat q = indicator_basis(op.grid, component_indicators(op.js, op.grid));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const auto n = static_cast<Eigen::Index>(op.grid.size());
  double min_slack = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < samples; ++s) {
    Vec u(n);
    for (Eigen::Index i = 0; i < n; ++i) u(i) = uni(rng);
    u -= q * (q.transpose() * u);
    const double uu = u.squaredNorm();
    const double energy = -u.dot(op.A * u);
    min_slack = std::min(min_slack, (constant * constant * energy - uu) / uu);
  }
  return {constant, min_slack, samples};
}

double max_principle_violation(const LinearOperatorMatrix& op, double dt, std::size_t samples, std::uint64_t seed) {
  const auto n = static_cast<Eigen::Index>(op.grid.size());
  Sp M = -dt * op.A;
  for (Eigen::Index i = 0; i < n; ++i) M.coeffRef(i, i) += 1.0;
  Eigen::SimplicialLDLT<Sp> ldlt(M);
  if (ldlt.info() != Eigen::Success) throw Error(ErrorKind::LinearAlgebra, "factorization of I - dt A failed");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    Vec u(n);
    for (Eigen::Index i = 0; i < n; ++i) u(i) = uni(rng);
    const Vec v = ldlt.solve(u);
    worst = std::max({worst, v.maxCoeff() - u.maxCoeff(), u.minCoeff() - v.minCoeff()});
  }
  return worst;
}

std::vector<double> fd_laplacian_eigenvalues(const PeriodicGrid& grid) {
  const double h = grid.spacing();
  const auto n = grid.n();
  std::vector<double> axis(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = std::sin(std::numbers::pi * static_cast<double>(k) * h / 2.0);
    axis[k] = 4.0 / (h * h) * s * s;
  }
  std::vector<double> out;
  if (grid.dim() == 1) {
    out = axis;
  } else {
    out.reserve(grid.size());
    for (double a : axis)
      for (double b : axis) out.push_back(a + b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fracpm
