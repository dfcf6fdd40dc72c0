#include <algorithm>
#include <cmath>

#include "eigbound/error.hpp"
#include "eigbound/linalg/eigen_solve.hpp"

namespace eigbound::linalg {

namespace {

struct SplitSpectrum {
  Eigen::MatrixXd range;  // orthonormal basis of the numerical range of b
  Eigen::MatrixXd null;   // orthonormal basis of ker(b)
};

SplitSpectrum split_by_null_threshold(const SymMatrix& b, double null_tolerance) {
  const double max_diag = b.max_diagonal();
  if (!(max_diag > 0.0)) throw Error(ErrorCode::RankZero, "b is numerically zero");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b.dense());
  const double cutoff = null_tolerance * max_diag;
  const Eigen::VectorXd& d = es.eigenvalues();
  if (d.minCoeff() < -cutoff)
    throw Error(ErrorCode::NotPositiveDefinite, "b has a negative eigenvalue beyond the null threshold");
  const auto null_dim = static_cast<Eigen::Index>(std::count_if(
      d.data(), d.data() + d.size(), [&](double v) { return v < cutoff; }));
  // Eigenvalues ascend, so the null directions are the leading columns.
  return {es.eigenvectors().rightCols(d.size() - null_dim), es.eigenvectors().leftCols(null_dim)};
}

}  // namespace

Eigen::Index semidefinite_rank(const SymMatrix& b, double null_tolerance) {
  return split_by_null_threshold(b, null_tolerance).range.cols();
}

EigenResult solve_gevp_semidefinite(const SymMatrix& a, const SymMatrix& b,
                                    const SolveOptions& options) {
  if (a.order() != b.order()) throw Error(ErrorCode::InvalidDims, "pencil orders differ");
  const SplitSpectrum split = split_by_null_threshold(b, options.null_tolerance);
  const Eigen::Index rank = split.range.cols();
  if (rank == 0) throw Error(ErrorCode::RankZero, "b has no direction above the null threshold");
  if (split.null.cols() == 0) return solve_gevp(a, b, rank, options);

  // Minimizing xᵀ·a·x over the ker(b) component for fixed range component
  // gives x = z - K·(Kᵀ·a·K)⁻¹·Kᵀ·a·z: the a-orthogonal complement of ker(b).
  const SymMatrix a_null = congruence(a, split.null);
  try {
    static_cast<void>(cholesky(a_null));
  } catch (const Error&) {
    throw Error(ErrorCode::NotPositiveDefinite, "a is not positive definite on ker(b)");
  }
  const Eigen::MatrixXd coupling = split.null.transpose() * (a.dense() * split.range);
  const Eigen::MatrixXd correction = Eigen::LLT<Eigen::MatrixXd>(a_null.dense()).solve(coupling);
  const Eigen::MatrixXd basis = split.range - split.null * correction;

  EigenResult reduced = solve_gevp(congruence(a, basis), congruence(b, basis), rank, options);
  EigenResult result;
  result.values = std::move(reduced.values);
  result.vectors = basis * reduced.vectors;
  attach_diagnostics(result, a.dense(), b.dense());
  return result;
}

}  // namespace eigbound::linalg
