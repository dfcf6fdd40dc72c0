#pragma once

#include "eigbound/mesh/mesh_io.hpp"
#include "eigbound/mesh/triangle_mesh.hpp"
