#pragma once

#include <filesystem>
#include <optional>
#include <variant>
#include <vector>

#include "eigbound/fem/assembly.hpp"
#include "eigbound/fem/kappa.hpp"
#include "eigbound/linalg/eigen_solve.hpp"
#include "eigbound/mesh/triangle_mesh.hpp"

namespace eigbound::bounds {

/// One eigenvalue index on one mesh: [lower, upper] with
/// lower = λ_k^CR/(1+α²λ_k^CR) and upper = λ_k^P1.
struct EnclosureRow {
  int level = 0;
  double h_max = 0.0;
  int k = 0;  ///< 1-based
  double lambda_nc = 0.0;
  double alpha = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::optional<double> exact;
  double width = 0.0;

  bool contains_exact() const { return !exact || (lower <= *exact && *exact <= upper); }
};

/// Auto derives α from the mesh and the CR constant; a fixed value is used as given.
struct AlphaMode {
  std::optional<double> fixed;

  static AlphaMode automatic() { return {}; }
  static AlphaMode fixed_value(double alpha) { return {alpha}; }
};

struct EncloseOptions {
  AlphaMode alpha;
  /// Fixed(0) claims V ⊂ W, which is false for CR; it must be asked for.
  bool allow_zero_alpha = false;
  /// Space whose eigenvalues are transformed into lower bounds.
  fem::ElementKind lower_space = fem::ElementKind::CRNonconforming;
  /// Constant for Auto mode; default_kappa() when empty.
  std::optional<fem::KappaEstimate> kappa;
  linalg::SolveOptions solve;
  int level = 0;
};

std::vector<EnclosureRow> enclose(const mesh::TriangleMesh& m, int count, const EncloseOptions& options = {});

/// The `count` smallest π²(m²+n²), m, n ≥ 1, with multiplicity.
std::vector<double> exact_square_eigenvalues(int count);

/// The `count` smallest π²(m²/a²+n²/b²) for the rectangle a×b.
std::vector<double> exact_rectangle_eigenvalues(double width, double height, int count);

/// Exact Dirichlet eigenvalues when the mesh covers an axis-aligned rectangle.
std::optional<std::vector<double>> analytic_eigenvalues(const mesh::TriangleMesh& m, int count);

struct SquareDomain {
  int cells = 1;  ///< unit square, structured cells×cells
};
struct MeshFileDomain {
  std::filesystem::path path;
};
using Domain = std::variant<SquareDomain, MeshFileDomain>;

struct ConvergenceTable {
  std::vector<EnclosureRow> rows;  ///< sorted by (level, k)
  /// observed_rates[k−1][ℓ] = log2(width_ℓ / width_(ℓ+1)).
  std::vector<std::vector<double>> observed_rates;
  /// CW triangles fixed while loading a mesh file.
  int reoriented = 0;

  const EnclosureRow& row(int level, int k) const;
};

/// Runs enclose on the red-refinement chain ℓ = 0..levels−1.
ConvergenceTable convergence_study(const Domain& domain, int levels, int count,
                                   const EncloseOptions& options = {});

}  // namespace eigbound::bounds
