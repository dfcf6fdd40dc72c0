#include "eigbound/framework/hilbert_triple.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eigbound/error.hpp"
#include "eigbound/random.hpp"

namespace eigbound::framework {

namespace {

bool full_column_rank(const Eigen::MatrixXd& basis) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(basis);
  return qr.rank() == basis.cols();
}

const Eigen::MatrixXd& basis_of(const HilbertTriple& t, Subspace which) {
  return which == Subspace::W ? t.basis_w : t.basis_v;
}

}  // namespace

void validate(const HilbertTriple& t) {
  const Eigen::Index n = t.gram_m.order();
  if (t.gram_n.order() != n)
    throw Error(ErrorCode::InvariantViolation, "gram_m and gram_n orders differ");
  for (const auto* basis : {&t.basis_w, &t.basis_v})
    if (basis->rows() != n || basis->cols() < 1 || basis->cols() > n)
      throw Error(ErrorCode::InvariantViolation, "basis shape must be n x p with 1 <= p <= n");
  try {
    static_cast<void>(linalg::cholesky(t.gram_m));
  } catch (const Error&) {
    throw Error(ErrorCode::InvariantViolation, "gram_m is not coercive (Cholesky failed)");
  }
  const double max_diag = t.gram_n.max_diagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t.gram_n.dense(), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-12 * std::max(max_diag, 0.0))
    throw Error(ErrorCode::InvariantViolation, "gram_n is not positive semidefinite");
  if (!full_column_rank(t.basis_w))
    throw Error(ErrorCode::InvariantViolation, "basis_w columns are linearly dependent");
  if (!full_column_rank(t.basis_v))
    throw Error(ErrorCode::InvariantViolation, "basis_v columns are linearly dependent");
}

HilbertTriple make_triple(SymMatrix gram_m, SymMatrix gram_n, Eigen::MatrixXd basis_w,
                          Eigen::MatrixXd basis_v) {
  HilbertTriple t{std::move(gram_m), std::move(gram_n), std::move(basis_w), std::move(basis_v)};
  validate(t);
  return t;
}

Eigen::MatrixXd m_projector(const HilbertTriple& t) {
  const Eigen::MatrixXd& v = t.basis_v;
  const SymMatrix gram = linalg::congruence(t.gram_m, v);
  Eigen::MatrixXd l;
  try {
    l = linalg::cholesky(gram);
  } catch (const Error&) {
    throw Error(ErrorCode::SingularGram, "basis_v' * gram_m * basis_v is not positive definite");
  }
  const Eigen::MatrixXd vt_m = v.transpose() * t.gram_m.dense();
  const auto lower = l.triangularView<Eigen::Lower>();
  const Eigen::MatrixXd coeffs = l.transpose().triangularView<Eigen::Upper>().solve(lower.solve(vt_m));
  return v * coeffs;
}

Eigen::MatrixXd m_orthogonal_complement(const SymMatrix& gram_m, const Eigen::MatrixXd& excluded,
                                        const Eigen::MatrixXd& ambient) {
  if (excluded.cols() == 0) return ambient;
  // Coefficients y with excludedᵀ·M·ambient·y = 0 span the null space of the
  // transpose of g, i.e. the trailing columns of a full QR of g.
  const Eigen::MatrixXd g = ambient.transpose() * (gram_m.dense() * excluded);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(g);
  const Eigen::Index rank = qr.rank();
  const Eigen::MatrixXd q = qr.householderQ();
  return ambient * q.rightCols(ambient.cols() - rank);
}

AlphaEstimate exact_alpha(const HilbertTriple& t) {
  const Eigen::Index n = t.dim();
  AlphaEstimate out;
  const Eigen::MatrixXd complement =
      m_orthogonal_complement(t.gram_m, t.basis_v, Eigen::MatrixXd::Identity(n, n));
  out.complement_dim = complement.cols();
  if (out.complement_dim == 0) {
    out.maximizer = Eigen::VectorXd::Zero(n);
    return out;
  }
  // Largest eigenvalue of (CᵀNC, CᵀMC) as the smallest of (−CᵀNC, CᵀMC).
  const SymMatrix n_c = linalg::congruence(t.gram_n, complement);
  const SymMatrix m_c = linalg::congruence(t.gram_m, complement);
  const SymMatrix neg_n_c = SymMatrix::from_lower(-n_c.dense());
  const EigenResult top = linalg::solve_gevp(neg_n_c, m_c, 1);
  out.alpha = std::sqrt(std::max(-top.values.front(), 0.0));
  out.maximizer = complement * top.vectors.col(0);
  return out;
}

Eigen::Index effective_dimension(const HilbertTriple& t, Subspace which) {
  const SymMatrix n_s = linalg::congruence(t.gram_n, basis_of(t, which));
  try {
    return linalg::semidefinite_rank(n_s);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::RankZero) return 0;
    throw;
  }
}

EigenResult subspace_eigenvalues(const HilbertTriple& t, Subspace which, Eigen::Index count) {
  const Eigen::MatrixXd& s = basis_of(t, which);
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "eigenvalue count must be >= 1");
  const SymMatrix m_s = linalg::congruence(t.gram_m, s);
  const SymMatrix n_s = linalg::congruence(t.gram_n, s);
  EigenResult full = linalg::solve_gevp_semidefinite(m_s, n_s);
  if (count > static_cast<Eigen::Index>(full.size()))
    throw Error(ErrorCode::CountExceedsOrder,
                "requested " + std::to_string(count) + " eigenvalues but the subspace has " +
                    std::to_string(full.size()) + " after deflating ker(N)");
  const auto c = static_cast<std::size_t>(count);
  full.values.resize(c);
  full.residuals.resize(c);
  full.vectors = s * full.vectors.leftCols(count);
  return full;
}

double lower_bound_transform(double lambda_v, double alpha) {
  if (!(lambda_v > 0.0)) throw Error(ErrorCode::NonpositiveEigenvalue, "lambda_v must be > 0");
  if (!(alpha >= 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be >= 0");
  return lambda_v / (1.0 + alpha * alpha * lambda_v);
}

HilbertTriple random_instance(std::uint64_t seed, Eigen::Index n, Eigen::Index p, Eigen::Index q) {
  if (n < 1 || p < 1 || q < 1 || p > n || q > n)
    throw Error(ErrorCode::InvalidDims, "random_instance requires 1 <= p, q <= n");
  SeededRng rng(seed);
  const Eigen::MatrixXd g = rng.gaussian_matrix(n, n);
  Eigen::MatrixXd m = g.transpose() * g;
  m.diagonal().array() += static_cast<double>(n);

  const auto rank = static_cast<Eigen::Index>(rng.integer(std::max<Eigen::Index>(1, q), n));
  const Eigen::MatrixXd h = rng.gaussian_matrix(rank, n);
  const Eigen::MatrixXd gram_n = h.transpose() * h;

  auto draw_basis = [&](Eigen::Index cols) {
    for (int attempt = 0; attempt < 100; ++attempt) {
      Eigen::MatrixXd b = rng.gaussian_matrix(n, cols);
      if (full_column_rank(b)) return b;
    }
    throw Error(ErrorCode::InvalidDims, "could not draw a full-rank basis");
  };
  Eigen::MatrixXd basis_w = draw_basis(p);
  Eigen::MatrixXd basis_v = draw_basis(q);
  return make_triple(SymMatrix::from_lower(m), SymMatrix::from_lower(gram_n), std::move(basis_w),
                     std::move(basis_v));
}

}  // namespace eigbound::framework
