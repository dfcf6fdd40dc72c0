#include "eigbound/linalg/sparse_sym_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eigbound/error.hpp"

namespace eigbound::linalg {

SparseSymMatrix SparseSymMatrix::from_upper_triplets(std::int32_t order,
                                                     const std::vector<Triplet>& upper) {
  if (order < 1) throw Error(ErrorCode::InvalidDims, "sparse matrix order must be >= 1");
  for (const auto& t : upper) {
    if (t.row < 0 || t.col < 0 || t.row >= order || t.col >= order)
      throw Error(ErrorCode::InvalidDims, "triplet index out of range");
    if (t.row > t.col) throw Error(ErrorCode::InvalidArgument, "triplet below the diagonal");
  }

  // Stable order by (row, col) so duplicates are summed in input order.
  std::vector<std::size_t> perm(upper.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    return std::pair(upper[a].row, upper[a].col) < std::pair(upper[b].row, upper[b].col);
  });

  std::vector<Triplet> merged;
  merged.reserve(upper.size());
  for (std::size_t idx : perm) {
    const auto& t = upper[idx];
    if (!merged.empty() && merged.back().row == t.row && merged.back().col == t.col)
      merged.back().value += t.value;
    else
      merged.push_back(t);
  }

  // Mirror: every off-diagonal entry appears at (r,c) and (c,r) with the same value.
  std::vector<std::int32_t> counts(order, 0);
  for (const auto& t : merged) {
    ++counts[t.row];
    if (t.row != t.col) ++counts[t.col];
  }
  SparseSymMatrix s;
  s.order_ = order;
  s.row_ptr_.assign(order + 1, 0);
  for (std::int32_t i = 0; i < order; ++i) s.row_ptr_[i + 1] = s.row_ptr_[i] + counts[i];
  s.col_index_.resize(s.row_ptr_.back());
  s.values_.resize(s.row_ptr_.back());
  std::vector<std::int32_t> fill(s.row_ptr_.begin(), s.row_ptr_.end() - 1);
  // Lower entries of row r come from triplets with col == r and row < r; the
  // merged list is sorted by row, so they arrive in ascending column order.
  for (const auto& t : merged) {
    if (t.row != t.col) {
      s.col_index_[fill[t.col]] = t.row;
      s.values_[fill[t.col]++] = t.value;
    }
  }
  for (const auto& t : merged) {
    s.col_index_[fill[t.row]] = t.col;
    s.values_[fill[t.row]++] = t.value;
  }
  // Within each row the lower part was written first, then diagonal and upper
  // in ascending order, so rows are already sorted.
  s.symmetric_ = true;
  return s;
}

SparseSymMatrix::SparseSymMatrix(std::int32_t order, std::vector<std::int32_t> row_ptr,
                                 std::vector<std::int32_t> col_index, std::vector<double> values)
    : order_(order),
      row_ptr_(std::move(row_ptr)),
      col_index_(std::move(col_index)),
      values_(std::move(values)) {
  if (order_ < 1) throw Error(ErrorCode::InvalidDims, "sparse matrix order must be >= 1");
  if (row_ptr_.size() != static_cast<std::size_t>(order_) + 1 || row_ptr_.front() != 0 ||
      static_cast<std::size_t>(row_ptr_.back()) != col_index_.size() ||
      col_index_.size() != values_.size())
    throw Error(ErrorCode::InvalidDims, "inconsistent CSR array lengths");
  for (std::int32_t i = 0; i < order_; ++i) {
    if (row_ptr_[i + 1] < row_ptr_[i]) throw Error(ErrorCode::InvalidDims, "row_ptr not monotone");
    for (std::int32_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
      if (col_index_[p] < 0 || col_index_[p] >= order_)
        throw Error(ErrorCode::InvalidDims, "column index out of range");
      if (p > row_ptr_[i] && col_index_[p] <= col_index_[p - 1])
        throw Error(ErrorCode::InvalidDims, "column indices unsorted or duplicated");
    }
  }
  check_symmetry();
}

void SparseSymMatrix::check_symmetry() {
  symmetric_ = true;
  for (std::int32_t i = 0; i < order_ && symmetric_; ++i)
    for (std::int32_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
      if (coeff(col_index_[p], i) != values_[p]) {
        symmetric_ = false;
        break;
      }
}

double SparseSymMatrix::coeff(std::int32_t row, std::int32_t col) const {
  const auto first = col_index_.begin() + row_ptr_[row];
  const auto last = col_index_.begin() + row_ptr_[row + 1];
  const auto it = std::lower_bound(first, last, col);
  if (it == last || *it != col) return 0.0;
  return values_[static_cast<std::size_t>(it - col_index_.begin())];
}

Eigen::VectorXd SparseSymMatrix::multiply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y(order_);
  for (std::int32_t i = 0; i < order_; ++i) {
    double sum = 0.0;
    for (std::int32_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) sum += values_[p] * x[col_index_[p]];
    y[i] = sum;
  }
  return y;
}

Eigen::MatrixXd SparseSymMatrix::multiply(const Eigen::MatrixXd& x) const {
  Eigen::MatrixXd y(order_, x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c) y.col(c) = multiply(Eigen::VectorXd(x.col(c)));
  return y;
}

double SparseSymMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (double v : values_) sum += v * v;
  return std::sqrt(sum);
}

SymMatrix SparseSymMatrix::to_dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(order_, order_);
  for (std::int32_t i = 0; i < order_; ++i)
    for (std::int32_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) m(i, col_index_[p]) = values_[p];
  return SymMatrix::from_lower(m);
}

Eigen::SparseMatrix<double> SparseSymMatrix::to_eigen() const {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(values_.size());
  for (std::int32_t i = 0; i < order_; ++i)
    for (std::int32_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
      triplets.emplace_back(i, col_index_[p], values_[p]);
  Eigen::SparseMatrix<double> m(order_, order_);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

SparseSymMatrix SparseSymMatrix::from_eigen_upper(const Eigen::SparseMatrix<double>& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidDims, "matrix must be square");
  std::vector<Triplet> upper;
  upper.reserve(static_cast<std::size_t>(m.nonZeros()));
  for (int k = 0; k < m.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it)
      if (it.row() <= it.col())
        upper.push_back({static_cast<std::int32_t>(it.row()), static_cast<std::int32_t>(it.col()),
                         it.value()});
  return from_upper_triplets(static_cast<std::int32_t>(m.rows()), upper);
}

}  // namespace eigbound::linalg
