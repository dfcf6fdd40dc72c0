#pragma once

#include "eigbound/linalg/eigen_solve.hpp"
#include "eigbound/linalg/sparse_sym_matrix.hpp"
#include "eigbound/linalg/sym_matrix.hpp"
