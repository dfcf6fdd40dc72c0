#pragma once

#include <array>

#include "eigbound/linalg/eigen_solve.hpp"
#include "eigbound/mesh/triangle_mesh.hpp"

namespace eigbound::fem {

inline constexpr int kDefaultKappaDepth = 6;
inline constexpr double kKappaInflation = 1.02;

/// How the reference constant is carried to a physical triangle T.
enum class ScalingRule {
  /// κ(T) = kappa·max(diam(T), σ_max(B_T)), B_T the linear part of the best
  /// affine map from the reference triangle onto T.
  DiameterOrAffineSingularValue,
};

struct KappaEstimate {
  /// 1/√μ_min on the reference triangle (0,0),(1,0),(0,1).
  double kappa_ref = 0.0;
  double mu_min = 0.0;
  int refine_depth = 0;
  double inflation = kKappaInflation;
  ScalingRule rule = ScalingRule::DiameterOrAffineSingularValue;

  /// The discretized reference problem approximates μ_min from above, so the
  /// value used for bounds is inflated.
  double certified() const noexcept { return inflation * kappa_ref; }
};

/// Minimum of |v|₁²/‖v‖₀² over P1 functions on `tri` refined `refine_depth`
/// times, subject to zero mean on each of the three edges (or unconstrained).
double edge_mean_constrained_minimum(const std::array<mesh::Point, 3>& tri, int refine_depth,
                                     bool constrain_edge_means = true,
                                     const linalg::SolveOptions& options = {});

/// Throws DepthTooSmall for refine_depth < 2.
KappaEstimate cr_interpolation_constant(int refine_depth = kDefaultKappaDepth,
                                        const linalg::SolveOptions& options = {});

/// Computed once per process at the default depth.
const KappaEstimate& default_kappa();

/// Geometric factor s(T) with κ(T) = kappa·s(T).
double element_scale(const std::array<mesh::Point, 3>& tri);

/// α = max over triangles of kappa.certified()·s(T).
double alpha_for_mesh(const mesh::TriangleMesh& m, const KappaEstimate& kappa);

}  // namespace eigbound::fem
