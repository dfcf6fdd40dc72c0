#pragma once

#include <filesystem>
#include <iosfwd>

#include "eigbound/mesh/triangle_mesh.hpp"

namespace eigbound::mesh {

struct LoadedMesh {
  TriangleMesh mesh;
  /// Number of clockwise triangles that were reoriented on load.
  int reoriented = 0;
};

/// Reads the `eigmesh 1` text format. Throws ParseError (with line number) on
/// malformed input and InvariantViolation on an invalid triangulation.
LoadedMesh load_mesh(const std::filesystem::path& path);
LoadedMesh read_mesh(std::istream& in);

/// Coordinates written with 17 significant digits so they round-trip bitwise.
void save_mesh(const TriangleMesh& m, const std::filesystem::path& path);
void write_mesh(const TriangleMesh& m, std::ostream& out);

}  // namespace eigbound::mesh
