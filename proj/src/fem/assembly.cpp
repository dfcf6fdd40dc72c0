#include "eigbound/fem/assembly.hpp"

#include <string>

#include "eigbound/error.hpp"

namespace eigbound::fem {

using linalg::SparseSymMatrix;
using linalg::Triplet;
using mesh::TriangleMesh;

DofMap build_dof_map(const TriangleMesh& m, ElementKind kind, BoundaryTreatment treatment) {
  const bool keep_all = treatment == BoundaryTreatment::Free;
  const auto& on_boundary = kind == ElementKind::P1Conforming ? m.boundary_vertex() : m.boundary_edge();
  std::vector<std::int32_t> global(on_boundary.size(), DofMap::kBoundary);
  std::int32_t next = 0;
  for (std::size_t i = 0; i < on_boundary.size(); ++i)
    if (keep_all || !on_boundary[i]) global[i] = next++;
  if (next == 0)
    throw Error(ErrorCode::NoInteriorDofs, kind == ElementKind::P1Conforming
                                               ? "mesh has no interior vertex"
                                               : "mesh has no interior edge");
  DofMap map;
  map.kind = kind;
  map.n_global = next;
  map.element_dofs.resize(m.num_triangles());
  const auto& entities = kind == ElementKind::P1Conforming ? m.triangles() : m.triangle_edges();
  for (std::size_t t = 0; t < m.num_triangles(); ++t)
    for (std::size_t i = 0; i < 3; ++i)
      map.element_dofs[t][i] = global[static_cast<std::size_t>(entities[t][i])];
  return map;
}

LocalMatrices local_matrices(const std::array<mesh::Point, 3>& tri, ElementKind kind) {
  const double area = mesh::signed_area(tri[0], tri[1], tri[2]);
  if (!(area > 0.0)) throw Error(ErrorCode::DegenerateTriangle, "element area must be positive");

  // ∇λ_i = (y_(i+1) − y_(i+2), x_(i+2) − x_(i+1)) / (2·area).
  Eigen::Matrix<double, 3, 2> grad;
  for (int i = 0; i < 3; ++i) {
    const auto& p = tri[static_cast<std::size_t>((i + 1) % 3)];
    const auto& q = tri[static_cast<std::size_t>((i + 2) % 3)];
    grad(i, 0) = (p.y - q.y) / (2.0 * area);
    grad(i, 1) = (q.x - p.x) / (2.0 * area);
  }
  LocalMatrices out;
  out.stiffness = area * (grad * grad.transpose());
  if (kind == ElementKind::P1Conforming) {
    // ∫λ_iλ_j = area·(1 + δ_ij)/12.
    out.mass = Eigen::Matrix3d::Constant(area / 12.0);
    out.mass.diagonal().setConstant(area / 6.0);
  } else {
    // φ_i = 1 − 2λ_i: gradients scale by −2, and the midpoint rule (exact
    // for quadratics on triangles) gives ∫φ_iφ_j = area·δ_ij/3.
    out.stiffness *= 4.0;
    out.mass = (area / 3.0) * Eigen::Matrix3d::Identity();
  }
  return out;
}

AssembledPair assemble(const TriangleMesh& m, ElementKind kind, BoundaryTreatment treatment) {
  DofMap map = build_dof_map(m, kind, treatment);
  std::vector<Triplet> stiffness, mass;
  stiffness.reserve(6 * m.num_triangles());
  mass.reserve(6 * m.num_triangles());
  for (std::size_t t = 0; t < m.num_triangles(); ++t) {
    const LocalMatrices local = local_matrices(m.corners(t), kind);
    const auto& dofs = map.element_dofs[t];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const std::int32_t gi = dofs[static_cast<std::size_t>(i)];
        const std::int32_t gj = dofs[static_cast<std::size_t>(j)];
        if (gi == DofMap::kBoundary || gj == DofMap::kBoundary || gi > gj) continue;
        stiffness.push_back({gi, gj, local.stiffness(i, j)});
        if (local.mass(i, j) != 0.0 || gi == gj) mass.push_back({gi, gj, local.mass(i, j)});
      }
  }
  return {SparseSymMatrix::from_upper_triplets(map.n_global, stiffness),
          SparseSymMatrix::from_upper_triplets(map.n_global, mass), std::move(map)};
}

linalg::EigenResult solve_discrete_eigen(const TriangleMesh& m, ElementKind kind, Eigen::Index count,
                                         const linalg::SolveOptions& options) {
  const AssembledPair pair = assemble(m, kind);
  if (count > pair.dof_map.n_global)
    throw Error(ErrorCode::CountExceedsOrder,
                "requested " + std::to_string(count) + " eigenvalues but the space has " +
                    std::to_string(pair.dof_map.n_global) + " free dofs");
  return linalg::solve_gevp(pair.stiffness, pair.mass, count, options);
}

}  // namespace eigbound::fem
