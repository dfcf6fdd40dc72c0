#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "eigbound/linalg/sym_matrix.hpp"

namespace eigbound::linalg {

struct Triplet {
  std::int32_t row;
  std::int32_t col;
  double value;
};

/// Compressed sparse row storage of a symmetric matrix. Both triangles are
/// stored; the constructors guarantee the mirrored value is bitwise equal.
class SparseSymMatrix {
 public:
  /// Builds from upper-triangle contributions (row <= col). Duplicates are
  /// summed in input order, then mirrored.
  static SparseSymMatrix from_upper_triplets(std::int32_t order, const std::vector<Triplet>& upper);

  /// Wraps raw CSR arrays after validating them. The symmetry flag records
  /// whether the transpose is bitwise identical.
  SparseSymMatrix(std::int32_t order, std::vector<std::int32_t> row_ptr,
                  std::vector<std::int32_t> col_index, std::vector<double> values);

  std::int32_t order() const noexcept { return order_; }
  std::size_t nnz() const noexcept { return values_.size(); }
  bool symmetric() const noexcept { return symmetric_; }

  const std::vector<std::int32_t>& row_ptr() const noexcept { return row_ptr_; }
  const std::vector<std::int32_t>& col_index() const noexcept { return col_index_; }
  const std::vector<double>& values() const noexcept { return values_; }

  /// Entry lookup; zero for entries outside the pattern.
  double coeff(std::int32_t row, std::int32_t col) const;

  Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd multiply(const Eigen::MatrixXd& x) const;
  double frobenius_norm() const;

  SymMatrix to_dense() const;
  Eigen::SparseMatrix<double> to_eigen() const;

  /// Upper triangle of an Eigen sparse matrix, mirrored. Used after sparse
  /// products whose rounding need not be symmetric.
  static SparseSymMatrix from_eigen_upper(const Eigen::SparseMatrix<double>& m);

 private:
  SparseSymMatrix() = default;
  void check_symmetry();

  std::int32_t order_ = 0;
  std::vector<std::int32_t> row_ptr_;
  std::vector<std::int32_t> col_index_;
  std::vector<double> values_;
  bool symmetric_ = false;
};

}  // namespace eigbound::linalg
