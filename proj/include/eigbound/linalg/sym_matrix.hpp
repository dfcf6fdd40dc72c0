#pragma once

#include <Eigen/Dense>

namespace eigbound::linalg {

/// Dense symmetric matrix. Only the lower triangle is authoritative on
/// construction; the stored matrix is mirrored so that (i,j) and (j,i) are
/// bitwise equal at all times.
class SymMatrix {
 public:
  explicit SymMatrix(Eigen::Index order);

  /// Mirrors the lower triangle of `m` into the upper triangle.
  static SymMatrix from_lower(const Eigen::MatrixXd& m);
  static SymMatrix identity(Eigen::Index order);
  static SymMatrix diagonal(const Eigen::VectorXd& d);

  Eigen::Index order() const noexcept { return m_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  void set(Eigen::Index i, Eigen::Index j, double value);

  const Eigen::MatrixXd& dense() const noexcept { return m_; }
  double max_diagonal() const { return m_.diagonal().maxCoeff(); }

 private:
  SymMatrix() = default;
  Eigen::MatrixXd m_;
};

/// Congruence transform Sᵀ·A·S, returned exactly symmetric.
SymMatrix congruence(const SymMatrix& a, const Eigen::MatrixXd& s);

}  // namespace eigbound::linalg
