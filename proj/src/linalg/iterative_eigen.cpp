#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SparseCholesky>

#include "eigbound/error.hpp"
#include "eigbound/linalg/eigen_solve.hpp"
#include "eigbound/random.hpp"

namespace eigbound::linalg {

namespace {

constexpr int kMaxIterations = 500;
constexpr double kIterativeTolerance = 1e-12;

void sparse_diagnostics(EigenResult& result, const SparseSymMatrix& a, const SparseSymMatrix& b) {
  const double norm_a = a.frobenius_norm();
  const double norm_b = b.frobenius_norm();
  const Eigen::MatrixXd av = a.multiply(result.vectors);
  const Eigen::MatrixXd bv = b.multiply(result.vectors);
  result.residuals.resize(result.values.size());
  for (std::size_t k = 0; k < result.values.size(); ++k) {
    const auto col = static_cast<Eigen::Index>(k);
    const double lambda = result.values[k];
    result.residuals[k] =
        (av.col(col) - lambda * bv.col(col)).norm() / (norm_a + std::abs(lambda) * norm_b);
  }
  const Eigen::MatrixXd gram = result.vectors.transpose() * bv;
  result.b_orth_error =
      (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

// Block inverse iteration with shift 0 and Rayleigh-Ritz on every sweep. The
// block is wider than `count` so that degenerate eigenvalues are resolved and
// the convergence factor λ_count/λ_(block+1) stays well below one.
EigenResult shift_invert_subspace(const SparseSymMatrix& a, const SparseSymMatrix& b,
                                  Eigen::Index count, const SolveOptions& options) {
  const Eigen::Index n = a.order();
  const Eigen::SparseMatrix<double> a_sparse = a.to_eigen();
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> factor(a_sparse);
  if (factor.info() != Eigen::Success || (factor.vectorD().array() <= 0.0).any())
    throw Error(ErrorCode::NotPositiveDefinite,
                "shift-invert path requires a positive definite left-hand matrix");

  const Eigen::Index block = std::min(n, std::max(2 * count, count + 8));
  SeededRng rng(options.seed);
  Eigen::MatrixXd x = rng.gaussian_matrix(n, block);
  const double norm_a = a.frobenius_norm();
  const double norm_b = b.frobenius_norm();

  for (int iteration = 0; iteration < kMaxIterations; ++iteration) {
    Eigen::MatrixXd y = factor.solve(b.multiply(x));
    // Orthonormal basis of the iterated block keeps the projected mass matrix
    // well conditioned.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
    y = qr.householderQ() * Eigen::MatrixXd::Identity(n, block);

    const SymMatrix projected_a = SymMatrix::from_lower(y.transpose() * a.multiply(y));
    const SymMatrix projected_b = SymMatrix::from_lower(y.transpose() * b.multiply(y));
    const EigenResult ritz = solve_gevp(projected_a, projected_b, block, options);
    x = y * ritz.vectors;

    const Eigen::MatrixXd lead = x.leftCols(count);
    const Eigen::MatrixXd av = a.multiply(lead);
    const Eigen::MatrixXd bv = b.multiply(lead);
    bool converged = true;
    for (Eigen::Index k = 0; k < count && converged; ++k) {
      const double lambda = ritz.values[static_cast<std::size_t>(k)];
      const double r = (av.col(k) - lambda * bv.col(k)).norm() / (norm_a + std::abs(lambda) * norm_b);
      converged = r <= kIterativeTolerance;
    }
    if (converged) {
      EigenResult result;
      result.values.assign(ritz.values.begin(), ritz.values.begin() + count);
      result.vectors = lead;
      sparse_diagnostics(result, a, b);
      return result;
    }
  }
  throw Error(ErrorCode::NotConverged, "shift-invert subspace iteration did not converge in " +
                                           std::to_string(kMaxIterations) + " sweeps");
}

}  // namespace

EigenResult solve_gevp(const SparseSymMatrix& a, const SparseSymMatrix& b, Eigen::Index count,
                       const SolveOptions& options) {
  if (a.order() != b.order()) throw Error(ErrorCode::InvalidDims, "pencil orders differ");
  if (!a.symmetric() || !b.symmetric())
    throw Error(ErrorCode::InvalidArgument, "sparse pencil matrices must be exactly symmetric");
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "eigenvalue count must be >= 1");
  if (count > a.order())
    throw Error(ErrorCode::CountExceedsOrder, "requested " + std::to_string(count) +
                                                  " eigenvalues of an order-" +
                                                  std::to_string(a.order()) + " pencil");
  if (a.order() <= options.dense_threshold)
    return solve_gevp(a.to_dense(), b.to_dense(), count, options);
  return shift_invert_subspace(a, b, count, options);
}

}  // namespace eigbound::linalg
