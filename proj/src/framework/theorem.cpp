#include "eigbound/framework/theorem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "eigbound/error.hpp"
#include "eigbound/random.hpp"

namespace eigbound::framework {

namespace {

double slack_for(double value) { return kInequalitySlack * std::max(1.0, std::abs(value)); }

void require_index(const HilbertTriple& t, Eigen::Index k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "eigenvalue index must be >= 1");
  const Eigen::Index limit =
      std::min(effective_dimension(t, Subspace::W), effective_dimension(t, Subspace::V));
  if (k > limit)
    throw Error(ErrorCode::CountExceedsOrder,
                "index " + std::to_string(k) + " exceeds the effective dimension " + std::to_string(limit));
}

Eigen::MatrixXd m_normalized(const SymMatrix& gram_m, Eigen::MatrixXd basis) {
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    const double norm = std::sqrt(basis.col(j).dot(gram_m.dense() * basis.col(j)));
    basis.col(j) /= norm;
  }
  return basis;
}

double max_m_inner(const SymMatrix& gram_m, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.cols() == 0 || b.cols() == 0) return 0.0;
  return (a.transpose() * gram_m.dense() * b).cwiseAbs().maxCoeff();
}

// Relative amount by which lhs ≤ rhs fails, less the verification slack.
// `reference` is the size of the same quantity for the whole sample vector.
double violation(double lhs, double rhs, double reference) {
  const double scale =
      std::max({std::abs(lhs), std::abs(rhs), reference, std::numeric_limits<double>::min()});
  return (lhs - rhs) / scale - kInequalitySlack;
}

}  // namespace

TheoremReport verify_theorem(const HilbertTriple& t, Eigen::Index k_max) {
  require_index(t, k_max);
  TheoremReport report;
  report.k_max = k_max;
  report.lambdas_w = subspace_eigenvalues(t, Subspace::W, k_max).values;
  report.lambdas_v = subspace_eigenvalues(t, Subspace::V, k_max).values;
  report.alpha = exact_alpha(t).alpha;
  report.all_hold = true;
  report.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < static_cast<std::size_t>(k_max); ++k) {
    const double lower = lower_bound_transform(report.lambdas_v[k], report.alpha);
    report.lower_bounds.push_back(lower);
    const double lambda_w = report.lambdas_w[k];
    if (lower > lambda_w + slack_for(lambda_w)) report.all_hold = false;
    report.worst_margin = std::min(report.worst_margin, lambda_w - lower);
  }
  return report;
}

ChainReport verify_maxmin_chain(const HilbertTriple& t, Eigen::Index k, std::uint64_t sample_seed,
                                int samples) {
  require_index(t, k);
  const Eigen::Index n = t.dim();
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
  ChainReport r;
  r.k = k;

  const EigenResult eig_v = subspace_eigenvalues(t, Subspace::V, k);
  const auto idx = static_cast<std::size_t>(k - 1);
  r.lambda_v = eig_v.values[idx];
  r.lambda_w = subspace_eigenvalues(t, Subspace::W, k).values[idx];
  r.lambda_x = linalg::solve_gevp_semidefinite(t.gram_m, t.gram_n).values[idx];

  const AlphaEstimate alpha = exact_alpha(t);
  r.alpha = alpha.alpha;
  r.lower_bound = lower_bound_transform(r.lambda_v, r.alpha);

  // V_(k−1): span of the first k−1 V-eigenvectors; its M-complement in X.
  const Eigen::MatrixXd leading = eig_v.vectors.leftCols(k - 1);
  const Eigen::MatrixXd complement = m_orthogonal_complement(t.gram_m, leading, identity);
  r.complement_dim = complement.cols();
  const SymMatrix m_c = linalg::congruence(t.gram_m, complement);
  const SymMatrix n_c = linalg::congruence(t.gram_n, complement);
  r.min_rayleigh_complement = linalg::solve_gevp_semidefinite(m_c, n_c).values.front();

  const double gap_w_x = r.lambda_w - r.lambda_x;
  const double gap_x_r = r.lambda_x - r.min_rayleigh_complement;
  const double gap_r_l = r.min_rayleigh_complement - r.lower_bound;
  r.values_descend = gap_w_x >= -slack_for(r.lambda_w) && gap_x_r >= -slack_for(r.lambda_x) &&
                     gap_r_l >= -slack_for(r.min_rayleigh_complement);
  r.worst_margin = std::min({gap_w_x, gap_x_r, gap_r_l});

  // Splitting of the complement into a part inside V and the M-complement of V.
  const Eigen::MatrixXd v_complement =
      m_normalized(t.gram_m, m_orthogonal_complement(t.gram_m, leading, t.basis_v));
  const Eigen::MatrixXd v_orthogonal =
      m_normalized(t.gram_m, m_orthogonal_complement(t.gram_m, t.basis_v, identity));
  const Eigen::MatrixXd leading_unit = m_normalized(t.gram_m, leading);
  r.v_complement_dim = v_complement.cols();
  r.v_orthogonal_dim = v_orthogonal.cols();
  r.orthogonality_error = std::max({max_m_inner(t.gram_m, v_complement, v_orthogonal),
                                    max_m_inner(t.gram_m, leading_unit, v_complement),
                                    max_m_inner(t.gram_m, leading_unit, v_orthogonal)});
  Eigen::MatrixXd joined(n, r.v_complement_dim + r.v_orthogonal_dim);
  joined << v_complement, v_orthogonal;
  const bool spans = Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(joined).rank() == r.complement_dim;
  r.splitting_holds = spans && r.complement_dim == r.v_complement_dim + r.v_orthogonal_dim &&
                      r.orthogonality_error < 1e-10;

  // Per-vector chain on random elements of V_(k−1)^(X⊥).
  const Eigen::MatrixXd projector = m_projector(t);
  const Eigen::MatrixXd& gm = t.gram_m.dense();
  const Eigen::MatrixXd& gn = t.gram_n.dense();
  SeededRng rng(sample_seed);
  r.sampled_violation = samples > 0 ? -std::numeric_limits<double>::infinity() : 0.0;
  for (int s = 0; s < samples; ++s) {
    const Eigen::VectorXd v = complement * rng.gaussian_vector(complement.cols());
    const Eigen::VectorXd pv = projector * v;
    const Eigen::VectorXd rest = v - pv;
    const double v_n = std::sqrt(std::max(v.dot(gn * v), 0.0));
    const double pv_n2 = std::max(pv.dot(gn * pv), 0.0);
    const double pv_m2 = pv.dot(gm * pv);
    const double rest_n = std::sqrt(std::max(rest.dot(gn * rest), 0.0));
    const double rest_m = std::sqrt(std::max(rest.dot(gm * rest), 0.0));
    const double v_m2 = v.dot(gm * v);
    double worst = std::max({violation(r.lambda_v * pv_n2, pv_m2, v_m2),
                             violation(rest_n, r.alpha * rest_m, v_n),
                             violation(v_n, std::sqrt(pv_n2) + rest_n, v_n)});
    if (v_n * v_n > 1e-12 * t.gram_n.max_diagonal() * v.squaredNorm())
      worst = std::max(worst, violation(r.lower_bound, v_m2 / (v_n * v_n), 0.0));
    r.sampled_violation = std::max(r.sampled_violation, worst);
  }
  return r;
}

}  // namespace eigbound::framework
