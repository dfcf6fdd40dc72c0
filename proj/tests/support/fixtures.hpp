#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "eigbound/linalg/sym_matrix.hpp"
#include "eigbound/mesh/triangle_mesh.hpp"
#include "eigbound/random.hpp"

namespace fixture {

inline eigbound::linalg::SymMatrix random_spd(eigbound::SeededRng& rng, Eigen::Index n) {
  const Eigen::MatrixXd g = rng.gaussian_matrix(n, n);
  return eigbound::linalg::SymMatrix::from_lower(g.transpose() * g +
                                                 static_cast<double>(n) * Eigen::MatrixXd::Identity(n, n));
}

inline eigbound::linalg::SymMatrix random_symmetric(eigbound::SeededRng& rng, Eigen::Index n) {
  const Eigen::MatrixXd g = rng.gaussian_matrix(n, n);
  return eigbound::linalg::SymMatrix::from_lower(g + g.transpose());
}

/// Structured nx×ny mesh of the unit square with interior vertices moved by
/// up to 20% of the cell size. Connectivity and orientation are unchanged.
inline eigbound::mesh::TriangleMesh jittered_square(std::uint64_t seed, int nx, int ny) {
  const auto base = eigbound::mesh::structured_rectangle(nx, ny, 1.0, 1.0);
  eigbound::SeededRng rng(seed);
  std::vector<eigbound::mesh::Point> v = base.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (base.boundary_vertex()[i]) continue;
    v[i].x += 0.2 / nx * (2.0 * rng.uniform() - 1.0);
    v[i].y += 0.2 / ny * (2.0 * rng.uniform() - 1.0);
  }
  return eigbound::mesh::TriangleMesh(v, base.triangles());
}

}  // namespace fixture
