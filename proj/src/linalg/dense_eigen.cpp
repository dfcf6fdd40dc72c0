#include <algorithm>
#include <cstddef>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "eigbound/error.hpp"
#include "eigbound/linalg/eigen_solve.hpp"
#include "eigbound/random.hpp"
#include "symmetric_eigen.hpp"

namespace eigbound::linalg {

namespace detail {

namespace {

// Gaussian elimination with partial pivoting of T - shift*I for a symmetric
// tridiagonal T. U keeps two superdiagonals.
struct TridiagonalLu {
  Eigen::VectorXd u0, u1, u2, mult;
  std::vector<char> swapped;

  TridiagonalLu(const Eigen::VectorXd& d, const Eigen::VectorXd& e, double shift, double tiny) {
    const Eigen::Index n = d.size();
    u0.resize(n);
    u1 = Eigen::VectorXd::Zero(n);
    u2 = Eigen::VectorXd::Zero(n);
    mult = Eigen::VectorXd::Zero(n);
    swapped.assign(static_cast<std::size_t>(n), 0);
    double diag = d[0] - shift;
    double sup = n > 1 ? e[0] : 0.0;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      const double sub = e[i];
      const double next_diag = d[i + 1] - shift;
      const double next_sup = i + 2 < n ? e[i + 1] : 0.0;
      if (std::abs(diag) >= std::abs(sub)) {
        if (diag == 0.0) diag = tiny;
        const double m = sub / diag;
        u0[i] = diag;
        u1[i] = sup;
        u2[i] = 0.0;
        mult[i] = m;
        diag = next_diag - m * sup;
        sup = next_sup;
      } else {
        const double m = diag / sub;
        u0[i] = sub;
        u1[i] = next_diag;
        u2[i] = next_sup;
        mult[i] = m;
        swapped[static_cast<std::size_t>(i)] = 1;
        diag = sup - m * next_diag;
        sup = -m * next_sup;
      }
    }
    u0[n - 1] = diag == 0.0 ? tiny : diag;
  }

  void solve(Eigen::VectorXd& x, double tiny) const {
    const Eigen::Index n = x.size();
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      if (swapped[static_cast<std::size_t>(i)]) std::swap(x[i], x[i + 1]);
      x[i + 1] -= mult[i] * x[i];
    }
    for (Eigen::Index i = n - 1; i >= 0; --i) {
      double v = x[i];
      if (i + 1 < n) v -= u1[i] * x[i + 1];
      if (i + 2 < n) v -= u2[i] * x[i + 2];
      const double p = std::abs(u0[i]) < tiny ? std::copysign(tiny, u0[i]) : u0[i];
      x[i] = v / p;
    }
  }
};

Eigen::MatrixXd tridiagonal_vectors(const Eigen::VectorXd& d, const Eigen::VectorXd& e,
                                    const Eigen::VectorXd& values) {
  const Eigen::Index n = d.size();
  const Eigen::Index count = values.size();
  const double eps = std::numeric_limits<double>::epsilon();
  double norm = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double row = std::abs(d[i]);
    if (i > 0) row += std::abs(e[i - 1]);
    if (i + 1 < n) row += std::abs(e[i]);
    norm = std::max(norm, row);
  }
  norm = std::max(norm, std::numeric_limits<double>::min());
  const double tiny = eps * norm;
  const double cluster_gap = 1e-3 * norm;
  const double separation = 10.0 * eps * norm;

  Eigen::MatrixXd z(n, count);
  SeededRng rng(0x5eedULL);
  Eigen::Index cluster_start = 0;
  double previous_shift = 0.0;
  for (Eigen::Index j = 0; j < count; ++j) {
    double shift = values[j];
    if (j > 0) {
      if (values[j] - values[j - 1] > cluster_gap) cluster_start = j;
      if (shift - previous_shift < separation) shift = previous_shift + separation;
    }
    previous_shift = shift;
    const TridiagonalLu lu(d, e, shift, tiny);
    Eigen::VectorXd x = rng.gaussian_vector(n);
    x.normalize();
    int extra = 0;
    for (int iter = 0; iter < 10; ++iter) {
      lu.solve(x, tiny);
      for (Eigen::Index k = cluster_start; k < j; ++k) x -= z.col(k).dot(x) * z.col(k);
      const double growth = x.norm();
      if (!std::isfinite(growth) || growth == 0.0)
        throw Error(ErrorCode::NotConverged, "inverse iteration broke down");
      x /= growth;
      if (1.0 / growth <= 1e3 * eps * norm && ++extra >= 2) break;
    }
    for (Eigen::Index k = cluster_start; k < j; ++k) x -= z.col(k).dot(x) * z.col(k);
    z.col(j) = x.normalized();
  }
  return z;
}

}  // namespace

SymmetricEigenpairs smallest_symmetric_eigenpairs(Eigen::MatrixXd c, Eigen::Index count) {
  const Eigen::Index n = c.rows();
  SymmetricEigenpairs out;
  if (n == 1) {
    out.values = c.diagonal();
    out.vectors = Eigen::MatrixXd::Ones(1, 1);
    return out;
  }
  Eigen::Tridiagonalization<Eigen::MatrixXd> tri(c);
  const Eigen::VectorXd diag = tri.diagonal();
  const Eigen::VectorXd sub = tri.subDiagonal();
  // The QL deflation test is not scale invariant; run it on T/‖T‖max.
  double scale = std::max(diag.cwiseAbs().maxCoeff(), sub.cwiseAbs().maxCoeff());
  if (!(scale > 0.0)) scale = 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> values;
  values.computeFromTridiagonal(diag / scale, sub / scale, Eigen::EigenvaluesOnly);
  if (values.info() != Eigen::Success)
    throw Error(ErrorCode::NotConverged, "tridiagonal QL iteration did not converge");
  out.values = scale * values.eigenvalues().head(count);
  const Eigen::MatrixXd z = tridiagonal_vectors(diag, sub, out.values);
  out.vectors = tri.matrixQ() * z;
  return out;
}

}  // namespace detail

Eigen::MatrixXd cholesky(const SymMatrix& a) {
  const Eigen::Index n = a.order();
  const double max_diag = a.dense().diagonal().maxCoeff();
  const double threshold = static_cast<double>(n) * std::numeric_limits<double>::epsilon() *
                           std::max(max_diag, 0.0);
  if (!(max_diag > 0.0)) throw Error(ErrorCode::NotPositiveDefinite, "non-positive diagonal");
  Eigen::LLT<Eigen::MatrixXd, Eigen::Lower> llt(a.dense());
  if (llt.info() != Eigen::Success)
    throw Error(ErrorCode::NotPositiveDefinite, "Cholesky pivot is not positive");
  Eigen::MatrixXd l = llt.matrixL();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double pivot = l(i, i) * l(i, i);
    if (!(pivot > threshold))
      throw Error(ErrorCode::NotPositiveDefinite,
                  "Cholesky pivot " + std::to_string(i) + " below order*eps*max-diagonal");
  }
  return l;
}

void attach_diagnostics(EigenResult& result, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const double norm_a = a.norm();
  const double norm_b = b.norm();
  const Eigen::MatrixXd av = a * result.vectors;
  const Eigen::MatrixXd bv = b * result.vectors;
  result.residuals.resize(result.values.size());
  for (std::size_t k = 0; k < result.values.size(); ++k) {
    const double lambda = result.values[k];
    const auto col = static_cast<Eigen::Index>(k);
    const double r = (av.col(col) - lambda * bv.col(col)).norm();
    result.residuals[k] = r / (norm_a + std::abs(lambda) * norm_b);
  }
  const Eigen::MatrixXd gram = result.vectors.transpose() * bv;
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(gram.rows(), gram.cols());
  result.b_orth_error = gram.size() == 0 ? 0.0 : (gram - identity).cwiseAbs().maxCoeff();
}

EigenResult solve_gevp(const SymMatrix& a, const SymMatrix& b, Eigen::Index count,
                       const SolveOptions&) {
  if (a.order() != b.order()) throw Error(ErrorCode::InvalidDims, "pencil orders differ");
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "eigenvalue count must be >= 1");
  if (count > a.order())
    throw Error(ErrorCode::CountExceedsOrder, "requested " + std::to_string(count) +
                                                  " eigenvalues of an order-" +
                                                  std::to_string(a.order()) + " pencil");

  const Eigen::MatrixXd l = cholesky(b);
  const auto lower = l.triangularView<Eigen::Lower>();
  // c = L⁻¹·a·L⁻ᵀ, formed as L⁻¹·(L⁻¹·a)ᵀ since a is symmetric.
  Eigen::MatrixXd c = lower.solve(a.dense());
  c.transposeInPlace();
  c = lower.solve(c);

  auto pairs = detail::smallest_symmetric_eigenpairs(std::move(c), count);

  EigenResult result;
  result.values.assign(pairs.values.data(), pairs.values.data() + count);
  result.vectors = l.transpose().triangularView<Eigen::Upper>().solve(pairs.vectors);
  // Values arrive ascending; keep ties in solver order.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(count));
  for (Eigen::Index i = 0; i < count; ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return result.values[static_cast<std::size_t>(x)] < result.values[static_cast<std::size_t>(y)];
  });
  if (!std::is_sorted(order.begin(), order.end())) {
    EigenResult sorted;
    sorted.vectors.resize(result.vectors.rows(), count);
    for (Eigen::Index i = 0; i < count; ++i) {
      sorted.values.push_back(result.values[static_cast<std::size_t>(order[i])]);
      sorted.vectors.col(i) = result.vectors.col(order[static_cast<std::size_t>(i)]);
    }
    result = std::move(sorted);
  }
  attach_diagnostics(result, a.dense(), b.dense());
  return result;
}

double rayleigh(const SymMatrix& a, const SymMatrix& b, const Eigen::VectorXd& x) {
  if (x.size() != a.order() || a.order() != b.order())
    throw Error(ErrorCode::InvalidDims, "rayleigh: dimension mismatch");
  const double denom = x.dot(b.dense() * x);
  const double scale = std::max(std::abs(b.max_diagonal()), std::numeric_limits<double>::min());
  if (!(denom > 1e-12 * scale * x.squaredNorm()))
    throw Error(ErrorCode::ZeroDenominator, "x lies in ker(b)");
  return x.dot(a.dense() * x) / denom;
}

}  // namespace eigbound::linalg
