#include "eigbound/bounds/enclosure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "eigbound/error.hpp"
#include "eigbound/framework/hilbert_triple.hpp"
#include "eigbound/mesh/mesh_io.hpp"

namespace eigbound::bounds {

using fem::ElementKind;
using mesh::TriangleMesh;

std::vector<double> exact_rectangle_eigenvalues(double width, double height, int count) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "count must be >= 1");
  if (!(width > 0.0) || !(height > 0.0)) throw Error(ErrorCode::InvalidDims, "rectangle extents must be positive");
  // The count smallest values all have m, n ≤ count.
  const double pi2 = std::numbers::pi * std::numbers::pi;
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(count) * static_cast<std::size_t>(count));
  for (int m = 1; m <= count; ++m)
    for (int n = 1; n <= count; ++n)
      values.push_back(pi2 * (m * m / (width * width) + n * n / (height * height)));
  std::sort(values.begin(), values.end());
  values.resize(static_cast<std::size_t>(count));
  return values;
}

std::vector<double> exact_square_eigenvalues(int count) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "count must be >= 1");
  const double pi2 = std::numbers::pi * std::numbers::pi;
  std::vector<double> values;
  for (int m = 1; m <= count; ++m)
    for (int n = 1; n <= count; ++n) values.push_back(pi2 * (m * m + n * n));
  std::sort(values.begin(), values.end());
  values.resize(static_cast<std::size_t>(count));
  return values;
}

std::optional<std::vector<double>> analytic_eigenvalues(const TriangleMesh& m, int count) {
  double xlo = m.vertices().front().x, xhi = xlo, ylo = m.vertices().front().y, yhi = ylo;
  for (const auto& p : m.vertices()) {
    xlo = std::min(xlo, p.x);
    xhi = std::max(xhi, p.x);
    ylo = std::min(ylo, p.y);
    yhi = std::max(yhi, p.y);
  }
  const double width = xhi - xlo, height = yhi - ylo;
  const double box_area = width * height;
  if (std::abs(m.total_area() - box_area) > 1e-12 * box_area) return std::nullopt;
  const double tol = 1e-12 * std::max(width, height);
  for (std::size_t v = 0; v < m.num_vertices(); ++v) {
    if (!m.boundary_vertex()[v]) continue;
    const auto& p = m.vertices()[v];
    const bool on_side = std::abs(p.x - xlo) <= tol || std::abs(p.x - xhi) <= tol ||
                         std::abs(p.y - ylo) <= tol || std::abs(p.y - yhi) <= tol;
    if (!on_side) return std::nullopt;
  }
  if (width == 1.0 && height == 1.0) return exact_square_eigenvalues(count);
  return exact_rectangle_eigenvalues(width, height, count);
}

std::vector<EnclosureRow> enclose(const TriangleMesh& m, int count, const EncloseOptions& options) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "count must be >= 1");
  double alpha = 0.0;
  if (options.alpha.fixed) {
    alpha = *options.alpha.fixed;
    if (!(alpha >= 0.0) || (alpha == 0.0 && !options.allow_zero_alpha))
      throw Error(ErrorCode::AlphaNonpositive,
                  alpha == 0.0 ? "alpha = 0 asserts V inside W; pass the explicit override"
                               : "alpha must be positive");
  } else {
    alpha = fem::alpha_for_mesh(m, options.kappa ? *options.kappa : fem::default_kappa());
  }

  const auto lower_eigs = fem::solve_discrete_eigen(m, options.lower_space, count, options.solve);
  const auto upper_eigs = options.lower_space == ElementKind::P1Conforming
                              ? lower_eigs
                              : fem::solve_discrete_eigen(m, ElementKind::P1Conforming, count, options.solve);
  const auto exact = analytic_eigenvalues(m, count);
  const double h_max = mesh::metrics(m).h_max;

  std::vector<EnclosureRow> rows;
  for (int k = 1; k <= count; ++k) {
    const auto i = static_cast<std::size_t>(k - 1);
    EnclosureRow row;
    row.level = options.level;
    row.h_max = h_max;
    row.k = k;
    row.lambda_nc = lower_eigs.values[i];
    row.alpha = alpha;
    row.lower = framework::lower_bound_transform(row.lambda_nc, alpha);
    row.upper = upper_eigs.values[i];
    if (exact) row.exact = (*exact)[i];
    row.width = row.upper - row.lower;
    rows.push_back(row);
  }
  return rows;
}

const EnclosureRow& ConvergenceTable::row(int level, int k) const {
  for (const auto& r : rows)
    if (r.level == level && r.k == k) return r;
  throw Error(ErrorCode::InvalidArgument,
              "no row for level " + std::to_string(level) + ", k " + std::to_string(k));
}

ConvergenceTable convergence_study(const Domain& domain, int levels, int count, const EncloseOptions& options) {
  if (levels < 1) throw Error(ErrorCode::InvalidArgument, "levels must be >= 1");
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "count must be >= 1");
  ConvergenceTable table;
  TriangleMesh current = std::visit(
      [&](const auto& d) -> TriangleMesh {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, SquareDomain>) {
          return mesh::structured_rectangle(d.cells, d.cells, 1.0, 1.0);
        } else {
          auto loaded = mesh::load_mesh(d.path);
          table.reoriented = loaded.reoriented;
          return std::move(loaded.mesh);
        }
      },
      domain);

  for (int level = 0; level < levels; ++level) {
    EncloseOptions level_options = options;
    level_options.level = level;
    const auto rows = enclose(current, count, level_options);
    table.rows.insert(table.rows.end(), rows.begin(), rows.end());
    if (level + 1 < levels) current = mesh::refine_red(current);
  }

  table.observed_rates.assign(static_cast<std::size_t>(count), {});
  for (int k = 1; k <= count; ++k)
    for (int level = 0; level + 1 < levels; ++level)
      table.observed_rates[static_cast<std::size_t>(k - 1)].push_back(
          std::log2(table.row(level, k).width / table.row(level + 1, k).width));
  return table;
}

}  // namespace eigbound::bounds
