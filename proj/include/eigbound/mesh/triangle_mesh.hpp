#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace eigbound::mesh {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

using Triangle = std::array<std::int32_t, 3>;
using Edge = std::array<std::int32_t, 2>;

double signed_area(const Point& a, const Point& b, const Point& c);

/// Conforming 2D triangulation. Construction derives the edge table and
/// boundary flags and checks every invariant (positive orientation, manifold
/// edges, Euler relation of a simply connected domain, no hanging vertices);
/// violations throw InvariantViolation.
class TriangleMesh {
 public:
  TriangleMesh(std::vector<Point> vertices, std::vector<Triangle> triangles);

  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  const std::vector<Triangle>& triangles() const noexcept { return triangles_; }
  /// Sorted vertex pairs in lexicographic order.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  /// triangle_edges()[t][i] is the edge opposite local vertex i.
  const std::vector<Triangle>& triangle_edges() const noexcept { return triangle_edges_; }
  const std::vector<bool>& boundary_edge() const noexcept { return boundary_edge_; }
  /// A vertex is on the boundary iff it is an endpoint of a boundary edge.
  const std::vector<bool>& boundary_vertex() const noexcept { return boundary_vertex_; }

  std::size_t num_vertices() const noexcept { return vertices_.size(); }
  std::size_t num_triangles() const noexcept { return triangles_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  std::size_t num_boundary_edges() const;

  std::array<Point, 3> corners(std::size_t t) const;
  double area(std::size_t t) const;
  double total_area() const;

 private:
  void build_topology();
  void check_invariants() const;

  std::vector<Point> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<Edge> edges_;
  std::vector<Triangle> triangle_edges_;
  std::vector<bool> boundary_edge_;
  std::vector<bool> boundary_vertex_;
};

struct MeshMetrics {
  double h_max = 0.0;      ///< longest edge
  double h_min = 0.0;      ///< shortest edge
  double min_angle = 0.0;  ///< degrees
};

/// Rectangle [0,width]×[0,height] split into nx×ny cells, each cut along the
/// lower-left to upper-right diagonal.
TriangleMesh structured_rectangle(int nx, int ny, double width, double height);

/// Each triangle replaced by four similar children through edge midpoints.
/// New midpoint vertices are numbered old_vertex_count + edge index.
TriangleMesh refine_red(const TriangleMesh& m);

MeshMetrics metrics(const TriangleMesh& m);

/// Longest edge of one triangle.
double diameter(const std::array<Point, 3>& tri);

}  // namespace eigbound::mesh
