#include "eigbound/mesh/triangle_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "eigbound/error.hpp"

namespace eigbound::mesh {

namespace {

double distance(const Point& a, const Point& b) { return std::hypot(b.x - a.x, b.y - a.y); }

Edge sorted_edge(std::int32_t a, std::int32_t b) { return a < b ? Edge{a, b} : Edge{b, a}; }

[[noreturn]] void violation(const std::string& what) {
  throw Error(ErrorCode::InvariantViolation, what);
}

// True if p lies strictly between a and b on the segment ab.
bool inside_segment(const Point& a, const Point& b, const Point& p) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  const double cross = dx * (p.y - a.y) - dy * (p.x - a.x);
  if (std::abs(cross) > 1e-12 * len2) return false;
  const double t = dx * (p.x - a.x) + dy * (p.y - a.y);
  return t > 1e-12 * len2 && t < (1.0 - 1e-12) * len2;
}

}  // namespace

double signed_area(const Point& a, const Point& b, const Point& c) {
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
}

double diameter(const std::array<Point, 3>& tri) {
  return std::max({distance(tri[0], tri[1]), distance(tri[1], tri[2]), distance(tri[2], tri[0])});
}

TriangleMesh::TriangleMesh(std::vector<Point> vertices, std::vector<Triangle> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  if (vertices_.empty() || triangles_.empty()) violation("mesh needs at least one triangle");
  const auto nv = static_cast<std::int32_t>(vertices_.size());
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    const auto& tri = triangles_[t];
    for (auto v : tri)
      if (v < 0 || v >= nv) violation("triangle " + std::to_string(t) + " references a missing vertex");
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[2] == tri[0])
      violation("triangle " + std::to_string(t) + " is degenerate (repeated vertex)");
    const auto c = corners(t);
    const double a = signed_area(c[0], c[1], c[2]);
    const double d = diameter(c);
    if (std::abs(a) <= 1e-14 * d * d)
      violation("triangle " + std::to_string(t) + " is degenerate (zero area)");
    if (a < 0.0) violation("triangle " + std::to_string(t) + " is not counterclockwise");
  }
  build_topology();
  check_invariants();
}

void TriangleMesh::build_topology() {
  std::vector<Edge> all;
  all.reserve(3 * triangles_.size());
  for (const auto& tri : triangles_)
    for (int i = 0; i < 3; ++i) all.push_back(sorted_edge(tri[(i + 1) % 3], tri[(i + 2) % 3]));
  edges_ = all;
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  std::vector<int> uses(edges_.size(), 0);
  triangle_edges_.resize(triangles_.size());
  for (std::size_t t = 0; t < triangles_.size(); ++t)
    for (int i = 0; i < 3; ++i) {
      const auto it = std::lower_bound(edges_.begin(), edges_.end(), all[3 * t + static_cast<std::size_t>(i)]);
      const auto e = static_cast<std::int32_t>(it - edges_.begin());
      triangle_edges_[t][static_cast<std::size_t>(i)] = e;
      ++uses[static_cast<std::size_t>(e)];
    }

  boundary_edge_.assign(edges_.size(), false);
  boundary_vertex_.assign(vertices_.size(), false);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (uses[e] > 2)
      violation("edge (" + std::to_string(edges_[e][0]) + "," + std::to_string(edges_[e][1]) +
                ") is shared by more than two triangles");
    if (uses[e] == 1) {
      boundary_edge_[e] = true;
      boundary_vertex_[static_cast<std::size_t>(edges_[e][0])] = true;
      boundary_vertex_[static_cast<std::size_t>(edges_[e][1])] = true;
    }
  }
}

void TriangleMesh::check_invariants() const {
  std::vector<bool> used(vertices_.size(), false);
  for (const auto& tri : triangles_)
    for (auto v : tri) used[static_cast<std::size_t>(v)] = true;
  if (std::find(used.begin(), used.end(), false) != used.end())
    violation("vertex not referenced by any triangle");

  const auto euler = static_cast<long long>(vertices_.size()) - static_cast<long long>(edges_.size()) +
                     static_cast<long long>(triangles_.size()) + 1;
  if (euler != 2)
    violation("Euler relation V - E + (T + 1) = 2 fails (got " + std::to_string(euler) +
              "); domain is not simply connected");

  // A hanging vertex leaves unmatched edges on both sides, so it shows up as
  // a boundary vertex lying inside another boundary edge.
  std::vector<std::int32_t> candidates;
  for (std::size_t v = 0; v < vertices_.size(); ++v)
    if (boundary_vertex_[v]) candidates.push_back(static_cast<std::int32_t>(v));
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (!boundary_edge_[e]) continue;
    const Point& a = vertices_[static_cast<std::size_t>(edges_[e][0])];
    const Point& b = vertices_[static_cast<std::size_t>(edges_[e][1])];
    const double xlo = std::min(a.x, b.x), xhi = std::max(a.x, b.x);
    const double ylo = std::min(a.y, b.y), yhi = std::max(a.y, b.y);
    for (auto v : candidates) {
      if (v == edges_[e][0] || v == edges_[e][1]) continue;
      const Point& p = vertices_[static_cast<std::size_t>(v)];
      if (p.x < xlo || p.x > xhi || p.y < ylo || p.y > yhi) continue;
      if (inside_segment(a, b, p))
        violation("hanging vertex " + std::to_string(v) + " on edge (" + std::to_string(edges_[e][0]) +
                  "," + std::to_string(edges_[e][1]) + ")");
    }
  }
}

std::size_t TriangleMesh::num_boundary_edges() const {
  return static_cast<std::size_t>(std::count(boundary_edge_.begin(), boundary_edge_.end(), true));
}

std::array<Point, 3> TriangleMesh::corners(std::size_t t) const {
  const auto& tri = triangles_[t];
  return {vertices_[static_cast<std::size_t>(tri[0])], vertices_[static_cast<std::size_t>(tri[1])],
          vertices_[static_cast<std::size_t>(tri[2])]};
}

double TriangleMesh::area(std::size_t t) const {
  const auto c = corners(t);
  return signed_area(c[0], c[1], c[2]);
}

double TriangleMesh::total_area() const {
  double sum = 0.0;
  for (std::size_t t = 0; t < triangles_.size(); ++t) sum += area(t);
  return sum;
}

TriangleMesh structured_rectangle(int nx, int ny, double width, double height) {
  if (nx < 1 || ny < 1 || !(width > 0.0) || !(height > 0.0))
    throw Error(ErrorCode::InvalidDims, "structured_rectangle needs nx, ny >= 1 and positive extents");
  std::vector<Point> vertices;
  vertices.reserve(static_cast<std::size_t>((nx + 1) * (ny + 1)));
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      vertices.push_back({width * i / nx, height * j / ny});
  std::vector<Triangle> triangles;
  triangles.reserve(static_cast<std::size_t>(2 * nx * ny));
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const std::int32_t v00 = j * (nx + 1) + i, v10 = v00 + 1;
      const std::int32_t v01 = v00 + nx + 1, v11 = v01 + 1;
      triangles.push_back({v00, v10, v11});
      triangles.push_back({v00, v11, v01});
    }
  return TriangleMesh(std::move(vertices), std::move(triangles));
}

TriangleMesh refine_red(const TriangleMesh& m) {
  std::vector<Point> vertices = m.vertices();
  const auto offset = static_cast<std::int32_t>(vertices.size());
  for (const auto& e : m.edges()) {
    const Point& a = vertices[static_cast<std::size_t>(e[0])];
    const Point& b = vertices[static_cast<std::size_t>(e[1])];
    vertices.push_back({0.5 * (a.x + b.x), 0.5 * (a.y + b.y)});
  }
  std::vector<Triangle> triangles;
  triangles.reserve(4 * m.num_triangles());
  for (std::size_t t = 0; t < m.num_triangles(); ++t) {
    const auto& tri = m.triangles()[t];
    const auto& te = m.triangle_edges()[t];
    // Midpoint opposite vertex i sits on edge te[i].
    const std::int32_t m0 = offset + te[0], m1 = offset + te[1], m2 = offset + te[2];
    triangles.push_back({tri[0], m2, m1});
    triangles.push_back({m2, tri[1], m0});
    triangles.push_back({m1, m0, tri[2]});
    triangles.push_back({m0, m1, m2});
  }
  return TriangleMesh(std::move(vertices), std::move(triangles));
}

MeshMetrics metrics(const TriangleMesh& m) {
  MeshMetrics out;
  out.h_min = std::numeric_limits<double>::infinity();
  for (const auto& e : m.edges()) {
    const double len = distance(m.vertices()[static_cast<std::size_t>(e[0])],
                                m.vertices()[static_cast<std::size_t>(e[1])]);
    out.h_max = std::max(out.h_max, len);
    out.h_min = std::min(out.h_min, len);
  }
  double min_angle = std::numbers::pi;
  for (std::size_t t = 0; t < m.num_triangles(); ++t) {
    const auto c = m.corners(t);
    for (int i = 0; i < 3; ++i) {
      // Law of cosines at corner i, opposite side a.
      const double a = distance(c[static_cast<std::size_t>((i + 1) % 3)], c[static_cast<std::size_t>((i + 2) % 3)]);
      const double b = distance(c[static_cast<std::size_t>(i)], c[static_cast<std::size_t>((i + 1) % 3)]);
      const double d = distance(c[static_cast<std::size_t>(i)], c[static_cast<std::size_t>((i + 2) % 3)]);
      const double cosine = std::clamp((b * b + d * d - a * a) / (2.0 * b * d), -1.0, 1.0);
      min_angle = std::min(min_angle, std::acos(cosine));
    }
  }
  out.min_angle = min_angle * 180.0 / std::numbers::pi;
  return out;
}

}  // namespace eigbound::mesh
