#include "eigbound/mesh/mesh_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "eigbound/error.hpp"

namespace eigbound::mesh {

namespace {

// Yields non-empty lines with '#' comments stripped, tracking line numbers.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& out) {
    std::string raw;
    while (std::getline(in_, raw)) {
      ++line_;
      if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      if (raw.find_first_not_of(" \t\r") != std::string::npos) {
        out = raw;
        return true;
      }
    }
    return false;
  }

  int line() const noexcept { return line_; }

 private:
  std::istream& in_;
  int line_ = 0;
};

template <typename... T>
void parse_fields(const std::string& text, int line, const char* what, T&... fields) {
  std::istringstream ss(text);
  ((ss >> fields), ...);
  std::string trailing;
  if (ss.fail() || (ss >> trailing)) throw ParseError(line, std::string("expected ") + what);
}

}  // namespace

LoadedMesh read_mesh(std::istream& in) {
  LineReader reader(in);
  std::string text;
  if (!reader.next(text)) throw ParseError(reader.line(), "empty file");
  {
    std::string magic;
    int version = 0;
    parse_fields(text, reader.line(), "header 'eigmesh 1'", magic, version);
    if (magic != "eigmesh" || version != 1) throw ParseError(reader.line(), "expected header 'eigmesh 1'");
  }
  long long nv = 0, nt = 0;
  if (!reader.next(text)) throw ParseError(reader.line(), "missing '<nv> <nt>' line");
  parse_fields(text, reader.line(), "'<nv> <nt>'", nv, nt);
  if (nv < 3 || nt < 1) throw ParseError(reader.line(), "need at least 3 vertices and 1 triangle");

  std::vector<Point> vertices(static_cast<std::size_t>(nv));
  for (auto& p : vertices) {
    if (!reader.next(text)) throw ParseError(reader.line(), "unexpected end of file in vertex block");
    parse_fields(text, reader.line(), "'<x> <y>'", p.x, p.y);
  }
  std::vector<Triangle> triangles(static_cast<std::size_t>(nt));
  int reoriented = 0;
  for (auto& tri : triangles) {
    if (!reader.next(text)) throw ParseError(reader.line(), "unexpected end of file in triangle block");
    long long i = 0, j = 0, k = 0;
    parse_fields(text, reader.line(), "'<i> <j> <k>'", i, j, k);
    for (long long idx : {i, j, k})
      if (idx < 0 || idx >= nv) throw ParseError(reader.line(), "vertex index out of range");
    tri = {static_cast<std::int32_t>(i), static_cast<std::int32_t>(j), static_cast<std::int32_t>(k)};
    const auto& a = vertices[static_cast<std::size_t>(i)];
    const auto& b = vertices[static_cast<std::size_t>(j)];
    const auto& c = vertices[static_cast<std::size_t>(k)];
    if (i != j && j != k && k != i && signed_area(a, b, c) < 0.0) {
      std::swap(tri[1], tri[2]);
      ++reoriented;
    }
  }
  if (reader.next(text)) throw ParseError(reader.line(), "trailing content after triangle block");
  return {TriangleMesh(std::move(vertices), std::move(triangles)), reoriented};
}

LoadedMesh load_mesh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open mesh file '" + path.string() + "'");
  return read_mesh(in);
}

void write_mesh(const TriangleMesh& m, std::ostream& out) {
  out << "eigmesh 1\n" << m.num_vertices() << ' ' << m.num_triangles() << '\n';
  char buf[64];
  for (const auto& p : m.vertices()) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x, p.y);
    out << buf;
  }
  for (const auto& t : m.triangles()) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

void save_mesh(const TriangleMesh& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write mesh file '" + path.string() + "'");
  write_mesh(m, out);
}

}  // namespace eigbound::mesh
