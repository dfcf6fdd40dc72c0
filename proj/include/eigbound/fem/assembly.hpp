#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "eigbound/linalg/eigen_solve.hpp"
#include "eigbound/linalg/sparse_sym_matrix.hpp"
#include "eigbound/mesh/triangle_mesh.hpp"

namespace eigbound::fem {

enum class ElementKind { P1Conforming, CRNonconforming };

/// Dirichlet eliminates boundary vertices (P1) or boundary edges (CR); Free
/// keeps every degree of freedom, as used for pre-elimination checks and for
/// the reference-triangle problem behind the CR constant.
enum class BoundaryTreatment { Dirichlet, Free };

struct DofMap {
  static constexpr std::int32_t kBoundary = -1;

  ElementKind kind = ElementKind::P1Conforming;
  std::int32_t n_global = 0;
  /// Local dof i of a P1 triangle is vertex i; of a CR triangle, the midpoint
  /// of the edge opposite vertex i.
  std::vector<std::array<std::int32_t, 3>> element_dofs;
};

/// Dofs are numbered in vertex (P1) or edge (CR) index order.
/// Throws NoInteriorDofs when no free dof remains.
DofMap build_dof_map(const mesh::TriangleMesh& m, ElementKind kind,
                     BoundaryTreatment treatment = BoundaryTreatment::Dirichlet);

struct LocalMatrices {
  Eigen::Matrix3d stiffness;
  Eigen::Matrix3d mass;
};

/// Exact element integrals of ∇φ_i·∇φ_j and φ_i·φ_j. Throws DegenerateTriangle.
LocalMatrices local_matrices(const std::array<mesh::Point, 3>& tri, ElementKind kind);

struct AssembledPair {
  linalg::SparseSymMatrix stiffness;
  linalg::SparseSymMatrix mass;
  DofMap dof_map;
};

AssembledPair assemble(const mesh::TriangleMesh& m, ElementKind kind,
                       BoundaryTreatment treatment = BoundaryTreatment::Dirichlet);

/// Smallest `count` Dirichlet eigenvalues of the discrete Laplacian.
linalg::EigenResult solve_discrete_eigen(const mesh::TriangleMesh& m, ElementKind kind,
                                         Eigen::Index count,
                                         const linalg::SolveOptions& options = {});

}  // namespace eigbound::fem
