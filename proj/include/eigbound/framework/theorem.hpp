#pragma once

#include <cstdint>
#include <vector>

#include "eigbound/framework/hilbert_triple.hpp"

namespace eigbound::framework {

inline constexpr double kInequalitySlack = 1e-9;

/// Both sides of λ_k^V/(1+α²λ_k^V) ≤ λ_k^W for k = 1..k_max.
struct TheoremReport {
  Eigen::Index k_max = 0;
  std::vector<double> lambdas_w;
  std::vector<double> lambdas_v;
  double alpha = 0.0;
  std::vector<double> lower_bounds;
  bool all_hold = false;
  double worst_margin = 0.0;  ///< min over k of λ_k^W − lower_k
};

TheoremReport verify_theorem(const HilbertTriple& t, Eigen::Index k_max);

/// The max-min argument for one index k, evaluated link by link:
///   λ_k^W ≥ λ_k ≥ min R over V_(k−1)^(X⊥) ≥ λ_k^V/(1+α²λ_k^V),
/// plus the splitting V_(k−1)^(X⊥) = V_(k−1)^(V⊥) ⊕ V^(X⊥).
struct ChainReport {
  Eigen::Index k = 0;
  double lambda_w = 0.0;
  double lambda_x = 0.0;
  double min_rayleigh_complement = 0.0;
  double lower_bound = 0.0;
  double lambda_v = 0.0;
  double alpha = 0.0;

  Eigen::Index complement_dim = 0;    ///< dim V_(k−1)^(X⊥)
  Eigen::Index v_complement_dim = 0;  ///< dim V_(k−1)^(V⊥)
  Eigen::Index v_orthogonal_dim = 0;  ///< dim V^(X⊥)
  double orthogonality_error = 0.0;   ///< largest M-inner product between the pieces
  /// Worst violation of the per-vector chain ‖v‖_N ≤ ‖Pv‖_N + ‖v−Pv‖_N,
  /// λ_k^V‖Pv‖²_N ≤ ‖Pv‖²_M and R(v) ≥ lower over sampled complement vectors
  /// (≤ 0 means every sample satisfied every link).
  double sampled_violation = 0.0;

  bool values_descend = false;
  bool splitting_holds = false;
  bool holds() const noexcept { return values_descend && splitting_holds && sampled_violation <= 0.0; }
  double worst_margin = 0.0;  ///< smallest gap between consecutive links
};

ChainReport verify_maxmin_chain(const HilbertTriple& t, Eigen::Index k, std::uint64_t sample_seed = 0,
                                int samples = 64);

}  // namespace eigbound::framework
