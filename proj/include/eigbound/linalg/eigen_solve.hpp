#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "eigbound/linalg/sparse_sym_matrix.hpp"
#include "eigbound/linalg/sym_matrix.hpp"

namespace eigbound::linalg {

/// Eigenpairs of a symmetric-definite pencil a·v = λ·b·v.
struct EigenResult {
  std::vector<double> values;  ///< ascending
  Eigen::MatrixXd vectors;     ///< columns, b-orthonormal
  /// ‖a·v − λ·b·v‖ / (‖a‖_F + |λ|·‖b‖_F) per pair.
  std::vector<double> residuals;
  /// max |vᵀ·b·v − I| entry.
  double b_orth_error = 0.0;

  std::size_t size() const noexcept { return values.size(); }
};

struct SolveOptions {
  /// Seed for any random starting block in the iterative path.
  std::uint64_t seed = 0;
  /// Orders above this use shift-invert subspace iteration on sparse input.
  std::int32_t dense_threshold = 3000;
  /// Eigenvalues of b below null_tolerance·max(diag(b)) count as ker(b).
  double null_tolerance = 1e-12;
};

inline constexpr double kResidualContract = 1e-9;
inline constexpr double kOrthogonalityContract = 1e-8;

/// Lower Cholesky factor. Throws NotPositiveDefinite when a pivot falls to
/// order·ε·max-diagonal or below.
Eigen::MatrixXd cholesky(const SymMatrix& a);

/// The `count` smallest eigenpairs of a·v = λ·b·v with b positive definite.
EigenResult solve_gevp(const SymMatrix& a, const SymMatrix& b, Eigen::Index count,
                       const SolveOptions& options = {});

/// Sparse overload: dense reduction up to options.dense_threshold, block
/// shift-invert subspace iteration beyond it (requires a positive definite).
EigenResult solve_gevp(const SparseSymMatrix& a, const SparseSymMatrix& b, Eigen::Index count,
                       const SolveOptions& options = {});

/// All finite eigenpairs of a pencil whose b is only semidefinite. The
/// problem is restricted to the a-orthogonal complement of ker(b); one value
/// per unit of numerical rank of b.
EigenResult solve_gevp_semidefinite(const SymMatrix& a, const SymMatrix& b,
                                    const SolveOptions& options = {});

/// Numerical rank of a semidefinite b under the null-space threshold.
Eigen::Index semidefinite_rank(const SymMatrix& b, double null_tolerance = 1e-12);

/// (xᵀ·a·x)/(xᵀ·b·x). Throws ZeroDenominator when x lies in ker(b).
double rayleigh(const SymMatrix& a, const SymMatrix& b, const Eigen::VectorXd& x);

/// Fills residuals and b_orth_error of `result` against the pencil (a, b).
void attach_diagnostics(EigenResult& result, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace eigbound::linalg
