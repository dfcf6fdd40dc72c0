#include "eigbound/fem/kappa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <Eigen/SparseCore>

#include "eigbound/error.hpp"
#include "eigbound/fem/assembly.hpp"

namespace eigbound::fem {

using mesh::Point;
using mesh::TriangleMesh;

namespace {

double distance(const Point& a, const Point& b) { return std::hypot(b.x - a.x, b.y - a.y); }

bool on_line(const Point& a, const Point& b, const Point& p) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  return std::abs(dx * (p.y - a.y) - dy * (p.x - a.x)) <= 1e-12 * (dx * dx + dy * dy);
}

// Mean-value weights of each vertex on the three sides of the coarse
// triangle: mean_s(v) = Σ weights[s][vertex]·v(vertex) for P1 functions.
std::array<std::map<std::int32_t, double>, 3> side_mean_weights(const TriangleMesh& fine,
                                                                const std::array<Point, 3>& tri) {
  std::array<std::map<std::int32_t, double>, 3> weights;
  for (std::size_t e = 0; e < fine.num_edges(); ++e) {
    if (!fine.boundary_edge()[e]) continue;
    const auto [a, b] = fine.edges()[e];
    const Point& pa = fine.vertices()[static_cast<std::size_t>(a)];
    const Point& pb = fine.vertices()[static_cast<std::size_t>(b)];
    for (std::size_t s = 0; s < 3; ++s) {
      const Point& c0 = tri[(s + 1) % 3];
      const Point& c1 = tri[(s + 2) % 3];
      if (!on_line(c0, c1, pa) || !on_line(c0, c1, pb)) continue;
      const double w = 0.5 * distance(pa, pb) / distance(c0, c1);
      weights[s][a] += w;
      weights[s][b] += w;
      break;
    }
  }
  return weights;
}

}  // namespace

double edge_mean_constrained_minimum(const std::array<Point, 3>& tri, int refine_depth,
                                     bool constrain_edge_means, const linalg::SolveOptions& options) {
  if (refine_depth < (constrain_edge_means ? 1 : 0))
    throw Error(ErrorCode::DepthTooSmall, "reference problem needs at least one refinement");
  TriangleMesh fine({tri[0], tri[1], tri[2]}, {{0, 1, 2}});
  for (int d = 0; d < refine_depth; ++d) fine = mesh::refine_red(fine);
  const AssembledPair pair = assemble(fine, ElementKind::P1Conforming, BoundaryTreatment::Free);
  if (!constrain_edge_means) return linalg::solve_gevp(pair.stiffness, pair.mass, 1, options).values.front();

  // Eliminate one vertex per side: the side-interior vertex nearest the side
  // midpoint. It appears in no other side's constraint, so v = Z·w is explicit.
  const auto weights = side_mean_weights(fine, tri);
  std::array<std::int32_t, 3> pivots{};
  for (std::size_t s = 0; s < 3; ++s) {
    const Point mid{0.5 * (tri[(s + 1) % 3].x + tri[(s + 2) % 3].x),
                    0.5 * (tri[(s + 1) % 3].y + tri[(s + 2) % 3].y)};
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [v, w] : weights[s]) {
      if (v < 3) continue;  // the three coarse corners keep their indices under refinement
      const double d = distance(fine.vertices()[static_cast<std::size_t>(v)], mid);
      if (d < best) {
        best = d;
        pivots[s] = v;
      }
    }
  }

  const auto n = static_cast<std::int32_t>(fine.num_vertices());
  std::vector<std::int32_t> column(static_cast<std::size_t>(n), -1);
  std::int32_t free_count = 0;
  for (std::int32_t v = 0; v < n; ++v)
    if (std::find(pivots.begin(), pivots.end(), v) == pivots.end()) column[static_cast<std::size_t>(v)] = free_count++;

  std::vector<Eigen::Triplet<double>> z_entries;
  for (std::int32_t v = 0; v < n; ++v)
    if (column[static_cast<std::size_t>(v)] >= 0) z_entries.emplace_back(v, column[static_cast<std::size_t>(v)], 1.0);
  for (std::size_t s = 0; s < 3; ++s) {
    const double pivot_weight = weights[s].at(pivots[s]);
    for (const auto& [v, w] : weights[s])
      if (v != pivots[s]) z_entries.emplace_back(pivots[s], column[static_cast<std::size_t>(v)], -w / pivot_weight);
  }
  Eigen::SparseMatrix<double> z(n, free_count);
  z.setFromTriplets(z_entries.begin(), z_entries.end());
  const Eigen::SparseMatrix<double> zt = z.transpose();
  const Eigen::SparseMatrix<double> k_red = zt * (pair.stiffness.to_eigen() * z);
  const Eigen::SparseMatrix<double> m_red = zt * (pair.mass.to_eigen() * z);
  const auto stiffness = linalg::SparseSymMatrix::from_eigen_upper(k_red);
  const auto mass = linalg::SparseSymMatrix::from_eigen_upper(m_red);
  return linalg::solve_gevp(stiffness, mass, 1, options).values.front();
}

KappaEstimate cr_interpolation_constant(int refine_depth, const linalg::SolveOptions& options) {
  if (refine_depth < 2) throw Error(ErrorCode::DepthTooSmall, "refine_depth must be >= 2");
  const std::array<Point, 3> reference{Point{0.0, 0.0}, Point{1.0, 0.0}, Point{0.0, 1.0}};
  KappaEstimate k;
  k.refine_depth = refine_depth;
  k.mu_min = edge_mean_constrained_minimum(reference, refine_depth, true, options);
  k.kappa_ref = 1.0 / std::sqrt(k.mu_min);
  return k;
}

const KappaEstimate& default_kappa() {
  static const KappaEstimate kappa = cr_interpolation_constant(kDefaultKappaDepth);
  return kappa;
}

double element_scale(const std::array<Point, 3>& tri) {
  // Pulling back through x = p_c + B·x̂ gives ‖v‖² ≤ κ_ref²·σ_max(B)²·|v|₁²,
  // with edge means preserved. Any vertex may play the right-angle corner.
  double best_sigma = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < 3; ++c) {
    const Point& o = tri[c];
    const Point& a = tri[(c + 1) % 3];
    const Point& b = tri[(c + 2) % 3];
    const double e1x = a.x - o.x, e1y = a.y - o.y, e2x = b.x - o.x, e2y = b.y - o.y;
    const double g11 = e1x * e1x + e1y * e1y;
    const double g22 = e2x * e2x + e2y * e2y;
    const double g12 = e1x * e2x + e1y * e2y;
    const double half_trace = 0.5 * (g11 + g22);
    const double top = half_trace + std::hypot(0.5 * (g11 - g22), g12);
    best_sigma = std::min(best_sigma, std::sqrt(top));
  }
  return std::max(mesh::diameter(tri), best_sigma);
}

double alpha_for_mesh(const TriangleMesh& m, const KappaEstimate& kappa) {
  double scale = 0.0;
  for (std::size_t t = 0; t < m.num_triangles(); ++t) scale = std::max(scale, element_scale(m.corners(t)));
  return kappa.certified() * scale;
}

}  // namespace eigbound::fem
