#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "eigbound/linalg/eigen_solve.hpp"
#include "eigbound/linalg/sym_matrix.hpp"

namespace eigbound::framework {

using linalg::EigenResult;
using linalg::SymMatrix;

/// A finite-dimensional space X given by Gram matrices of the energy form M
/// (positive definite) and the weight form N (semidefinite) on a basis of X,
/// with two subspaces W and V described by basis columns in X coordinates.
struct HilbertTriple {
  SymMatrix gram_m;
  SymMatrix gram_n;
  Eigen::MatrixXd basis_w;
  Eigen::MatrixXd basis_v;

  Eigen::Index dim() const noexcept { return gram_m.order(); }
};

/// Checks coercivity of M, semidefiniteness of N and full column rank of both
/// bases. Throws InvariantViolation naming the failed invariant.
void validate(const HilbertTriple& t);

/// Builds and validates.
HilbertTriple make_triple(SymMatrix gram_m, SymMatrix gram_n, Eigen::MatrixXd basis_w,
                          Eigen::MatrixXd basis_v);

enum class Subspace { W, V };

/// M-orthogonal projector onto span(basis_v): P = V·(VᵀMV)⁻¹·VᵀM.
Eigen::MatrixXd m_projector(const HilbertTriple& t);

/// Optimal constant in ‖x−Px‖_N ≤ α‖x−Px‖_M.
struct AlphaEstimate {
  double alpha = 0.0;
  Eigen::VectorXd maximizer;  ///< lies in range(I−P); zero when the complement is trivial
  Eigen::Index complement_dim = 0;
};

AlphaEstimate exact_alpha(const HilbertTriple& t);

/// Number of finite eigenvalues of the restricted pencil (rank of SᵀNS).
Eigen::Index effective_dimension(const HilbertTriple& t, Subspace which);

/// Smallest `count` eigenpairs of (SᵀMS, SᵀNS) after deflating ker(N) on the
/// subspace. Eigenvectors are returned in X coordinates (S·y); residuals refer
/// to the restricted pencil.
EigenResult subspace_eigenvalues(const HilbertTriple& t, Subspace which, Eigen::Index count);

/// λ/(1+α²λ).
double lower_bound_transform(double lambda_v, double alpha);

/// Basis (columns, X coordinates) of the M-orthogonal complement of
/// span(excluded) inside span(ambient).
Eigen::MatrixXd m_orthogonal_complement(const SymMatrix& gram_m, const Eigen::MatrixXd& excluded,
                                        const Eigen::MatrixXd& ambient);

/// Seeded random triple. M = GᵀG + n·I, N = HᵀH with H of seeded rank in
/// [max(1,q), n], Gaussian bases re-drawn until full rank.
HilbertTriple random_instance(std::uint64_t seed, Eigen::Index n, Eigen::Index p, Eigen::Index q);

}  // namespace eigbound::framework
