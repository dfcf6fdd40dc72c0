#pragma once

#include <Eigen/Dense>

namespace eigbound::linalg::detail {

struct SymmetricEigenpairs {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

/// The `count` smallest eigenpairs of a dense symmetric matrix (lower
/// triangle read). Householder tridiagonalization, implicit QL for the
/// values, inverse iteration for the vectors.
SymmetricEigenpairs smallest_symmetric_eigenpairs(Eigen::MatrixXd c, Eigen::Index count);

}  // namespace eigbound::linalg::detail
