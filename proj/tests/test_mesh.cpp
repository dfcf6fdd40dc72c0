#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>

#include "eigbound/error.hpp"
#include "eigbound/mesh.hpp"
#include "support/fixtures.hpp"

using namespace eigbound;
using namespace eigbound::mesh;

namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an eigbound::Error");
  return ErrorCode::InvalidArgument;
}

int parse_error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    read_mesh(in);
  } catch (const ParseError& e) {
    return e.line();
  }
  FAIL("expected a ParseError");
  return -1;
}

bool same_mesh(const TriangleMesh& a, const TriangleMesh& b) {
  if (a.num_vertices() != b.num_vertices() || a.triangles() != b.triangles()) return false;
  for (std::size_t i = 0; i < a.num_vertices(); ++i)
    if (a.vertices()[i].x != b.vertices()[i].x || a.vertices()[i].y != b.vertices()[i].y) return false;
  return true;
}

}  // namespace

TEST_CASE("structured rectangles") {
  const auto m1 = structured_rectangle(1, 1, 1.0, 1.0);
  CHECK(m1.num_vertices() == 4);
  CHECK(m1.num_triangles() == 2);
  CHECK(m1.num_edges() == 5);
  CHECK(m1.num_boundary_edges() == 4);

  const auto m2 = structured_rectangle(2, 2, 1.0, 1.0);
  CHECK(m2.num_vertices() == 9);
  CHECK(m2.num_triangles() == 8);
  CHECK(m2.num_edges() == 16);
  CHECK(m2.num_boundary_edges() == 8);

  CHECK(metrics(structured_rectangle(4, 4, 1.0, 1.0)).h_max == doctest::Approx(std::sqrt(2.0) / 4).epsilon(1e-15));

  for (int nx = 1; nx <= 5; ++nx)
    for (int ny = 1; ny <= 4; ++ny) {
      const auto m = structured_rectangle(nx, ny, 2.0, 0.5);
      CHECK(m.num_vertices() == static_cast<std::size_t>((nx + 1) * (ny + 1)));
      CHECK(m.num_triangles() == static_cast<std::size_t>(2 * nx * ny));
      CHECK(m.num_boundary_edges() == static_cast<std::size_t>(2 * (nx + ny)));
      CHECK(m.total_area() == doctest::Approx(1.0).epsilon(1e-14));
    }
  CHECK(code_of([] { structured_rectangle(0, 1, 1.0, 1.0); }) == ErrorCode::InvalidDims);
  CHECK(code_of([] { structured_rectangle(1, 1, -1.0, 1.0); }) == ErrorCode::InvalidDims);
}

TEST_CASE("edges are lexicographic and opposite their vertex") {
  const auto m = structured_rectangle(3, 2, 1.0, 1.0);
  for (std::size_t e = 0; e + 1 < m.num_edges(); ++e) CHECK(m.edges()[e] < m.edges()[e + 1]);
  for (std::size_t t = 0; t < m.num_triangles(); ++t)
    for (int i = 0; i < 3; ++i) {
      const auto& edge = m.edges()[static_cast<std::size_t>(m.triangle_edges()[t][i])];
      const auto v = m.triangles()[t][i];
      CHECK(edge[0] != v);
      CHECK(edge[1] != v);
    }
  std::size_t boundary_vertices = 0;
  for (bool b : m.boundary_vertex()) boundary_vertices += b ? 1 : 0;
  CHECK(boundary_vertices == 10);
}

TEST_CASE("red refinement") {
  const auto m = refine_red(structured_rectangle(1, 1, 1.0, 1.0));
  CHECK(m.num_vertices() == 9);
  CHECK(m.num_triangles() == 8);

  const auto twice = refine_red(refine_red(structured_rectangle(2, 2, 1.0, 1.0)));
  const auto direct = structured_rectangle(8, 8, 1.0, 1.0);
  CHECK(twice.num_vertices() == direct.num_vertices());
  CHECK(twice.num_triangles() == direct.num_triangles());
  CHECK(twice.num_edges() == direct.num_edges());
  CHECK(twice.num_boundary_edges() == direct.num_boundary_edges());

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto coarse = fixture::jittered_square(seed, 3, 4);
    const auto fine = refine_red(coarse);
    CHECK(fine.num_vertices() == coarse.num_vertices() + coarse.num_edges());
    CHECK(fine.num_triangles() == 4 * coarse.num_triangles());
    CHECK(std::abs(fine.total_area() - coarse.total_area()) <= 1e-14 * coarse.total_area());
    const auto mc = metrics(coarse), mf = metrics(fine);
    CHECK(mf.min_angle == doctest::Approx(mc.min_angle).epsilon(1e-12));
    CHECK(mf.h_max == doctest::Approx(0.5 * mc.h_max).epsilon(1e-14));
  }
  const auto s = structured_rectangle(4, 4, 1.0, 1.0);
  CHECK(metrics(refine_red(s)).h_max == 0.5 * metrics(s).h_max);
}

TEST_CASE("metrics") {
  const TriangleMesh right({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}});
  const auto m = metrics(right);
  CHECK(m.h_max == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(m.h_min == doctest::Approx(1.0));
  CHECK(m.min_angle == doctest::Approx(45.0).epsilon(1e-13));
  const auto j = metrics(fixture::jittered_square(9, 4, 4));
  CHECK(j.h_min <= j.h_max);
  CHECK(j.min_angle > 0.0);
}

TEST_CASE("invalid triangulations are rejected") {
  // Degenerate (repeated vertex) and collinear triangles.
  CHECK(code_of([] { TriangleMesh({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 1}}); }) == ErrorCode::InvariantViolation);
  CHECK(code_of([] { TriangleMesh({{0, 0}, {1, 0}, {2, 0}}, {{0, 1, 2}}); }) == ErrorCode::InvariantViolation);
  // Clockwise orientation.
  CHECK(code_of([] { TriangleMesh({{0, 0}, {1, 0}, {0, 1}}, {{0, 2, 1}}); }) == ErrorCode::InvariantViolation);
  // Index out of range.
  CHECK(code_of([] { TriangleMesh({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 3}}); }) == ErrorCode::InvariantViolation);
  // An edge shared by three triangles.
  CHECK(code_of([] {
          TriangleMesh({{0, 0}, {1, 0}, {0, 1}, {0.5, -1}, {1, 1}}, {{0, 1, 2}, {1, 0, 3}, {0, 1, 4}});
        }) == ErrorCode::InvariantViolation);
  // Vertex (1,0) hangs on the edge (0,0)-(2,0) of the first triangle.
  CHECK(code_of([] {
          TriangleMesh({{0, 0}, {2, 0}, {0, 2}, {1, -1}, {1, 0}}, {{0, 1, 2}, {0, 3, 4}});
        }) == ErrorCode::InvariantViolation);
  // A ring around a hole breaks the Euler relation of a simply connected domain.
  const auto grid = structured_rectangle(3, 3, 1.0, 1.0);
  std::vector<Triangle> ring;
  for (std::size_t t = 0; t < grid.num_triangles(); ++t)
    if (t / 2 != 4) ring.push_back(grid.triangles()[t]);
  CHECK(code_of([&] { TriangleMesh(grid.vertices(), ring); }) == ErrorCode::InvariantViolation);
  // Unused vertex.
  CHECK(code_of([] { TriangleMesh({{0, 0}, {1, 0}, {0, 1}, {5, 5}}, {{0, 1, 2}}); }) ==
        ErrorCode::InvariantViolation);
}

TEST_CASE("mesh files round-trip bitwise") {
  const auto original = fixture::jittered_square(17, 2, 2);
  std::stringstream buffer;
  write_mesh(original, buffer);
  const auto loaded = read_mesh(buffer);
  CHECK(loaded.reoriented == 0);
  CHECK(same_mesh(original, loaded.mesh));

  const auto path = std::filesystem::temp_directory_path() / "eigbound_mesh_roundtrip.txt";
  const auto square = structured_rectangle(2, 2, 1.0, 1.0);
  save_mesh(square, path);
  CHECK(same_mesh(square, load_mesh(path).mesh));
  std::filesystem::remove(path);
}

TEST_CASE("mesh file parsing") {
  std::istringstream commented(
      "# unit right triangle\n"
      "eigmesh 1\n"
      "\n"
      "3 1   # counts\n"
      "0 0\n1 0\n0 1\n"
      "0 2 1\n");
  const auto loaded = read_mesh(commented);
  CHECK(loaded.reoriented == 1);
  CHECK(loaded.mesh.area(0) == doctest::Approx(0.5));

  std::istringstream degenerate("eigmesh 1\n3 1\n0 0\n1 0\n0 1\n0 1 1\n");
  CHECK(code_of([&] { read_mesh(degenerate); }) == ErrorCode::InvariantViolation);

  CHECK(parse_error_line("") == 0);
  CHECK(parse_error_line("eigmesh 2\n3 1\n") == 1);
  CHECK(parse_error_line("eigmesh 1\n3\n") == 2);
  CHECK(parse_error_line("eigmesh 1\n3 1\n0 0\n1 zero\n0 1\n0 1 2\n") == 4);
  CHECK(parse_error_line("eigmesh 1\n3 1\n0 0\n1 0\n0 1\n0 1 7\n") == 6);
  CHECK(parse_error_line("# header\n\neigmesh 1\n3 1\n0 0\n1 0\n") == 6);
  CHECK(parse_error_line("eigmesh 1\n3 1\n0 0\n1 0\n0 1\n0 1 2\n9 9\n") == 7);

  try {
    load_mesh("definitely/not/here.mesh");
    FAIL("expected a ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 0);
  }
}
