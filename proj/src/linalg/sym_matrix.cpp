#include "eigbound/linalg/sym_matrix.hpp"

#include "eigbound/error.hpp"

namespace eigbound::linalg {

namespace {

void mirror_lower(Eigen::MatrixXd& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = j + 1; i < m.rows(); ++i) m(j, i) = m(i, j);
}

}  // namespace

SymMatrix::SymMatrix(Eigen::Index order) {
  if (order < 1) throw Error(ErrorCode::InvalidDims, "symmetric matrix order must be >= 1");
  m_ = Eigen::MatrixXd::Zero(order, order);
}

SymMatrix SymMatrix::from_lower(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw Error(ErrorCode::InvalidDims, "symmetric matrix must be square with order >= 1");
  SymMatrix s;
  s.m_ = m;
  mirror_lower(s.m_);
  return s;
}

SymMatrix SymMatrix::identity(Eigen::Index order) {
  SymMatrix s(order);
  s.m_.setIdentity();
  return s;
}

SymMatrix SymMatrix::diagonal(const Eigen::VectorXd& d) {
  SymMatrix s(d.size());
  s.m_.diagonal() = d;
  return s;
}

void SymMatrix::set(Eigen::Index i, Eigen::Index j, double value) {
  m_(i, j) = value;
  m_(j, i) = value;
}

SymMatrix congruence(const SymMatrix& a, const Eigen::MatrixXd& s) {
  if (s.rows() != a.order()) throw Error(ErrorCode::InvalidDims, "congruence: row count mismatch");
  const Eigen::MatrixXd as = a.dense() * s;
  return SymMatrix::from_lower(s.transpose() * as);
}

}  // namespace eigbound::linalg
