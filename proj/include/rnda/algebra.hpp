#pragma once

#include <vector>

#include <Eigen/Dense>

#include "rnda/special.hpp"

namespace rnda {

/// Dense matrix with entries in the real, complex, or quaternion algebra,
/// stored as one real plane per basis unit (1, i, j, k). Octonion matrices
/// are not representable here; the density routines accept spectra directly
/// in that case.
class AlgebraMatrix {
 public:
  /// Zero matrix. Throws std::invalid_argument when the algebra has no
  /// associative matrix representation (beta = 8) or a dimension is negative.
  AlgebraMatrix(int rows, int cols, AlgebraDim dim);

  /// Wraps existing planes; their count must equal beta and their shapes must
  /// all agree.
  static AlgebraMatrix from_planes(std::vector<Eigen::MatrixXd> planes, AlgebraDim dim);

  [[nodiscard]] static AlgebraMatrix identity(int n, AlgebraDim dim);

  [[nodiscard]] int rows() const { return static_cast<int>(planes_[0].rows()); }
  [[nodiscard]] int cols() const { return static_cast<int>(planes_[0].cols()); }
  [[nodiscard]] AlgebraDim algebra() const { return dim_; }

  [[nodiscard]] const Eigen::MatrixXd& plane(int p) const;
  [[nodiscard]] Eigen::MatrixXd& plane(int p);
  [[nodiscard]] const std::vector<Eigen::MatrixXd>& planes() const { return planes_; }

  /// Entrywise conjugate of the transpose.
  [[nodiscard]] AlgebraMatrix conjugate_transpose() const;

  [[nodiscard]] AlgebraMatrix operator*(const AlgebraMatrix& rhs) const;
  [[nodiscard]] AlgebraMatrix operator+(const AlgebraMatrix& rhs) const;
  [[nodiscard]] AlgebraMatrix operator-(const AlgebraMatrix& rhs) const;
  [[nodiscard]] AlgebraMatrix scaled(double c) const;

  /// Real part of the trace (the coefficient of the unit 1).
  [[nodiscard]] double real_trace() const { return planes_[0].trace(); }

  /// Squared Frobenius norm summed over planes.
  [[nodiscard]] double squared_norm() const;

  /// Faithful complex representation: the matrix itself for beta = 1 (cast to
  /// complex), A + iB for beta = 2, and the 2m x 2m block embedding
  /// [[Z1, Z2], [-conj(Z2), conj(Z1)]] with Z1 = A + iB, Z2 = C + iD for
  /// beta = 4. Multiplicative, so products and adjoints can be checked or
  /// computed downstairs in ordinary complex arithmetic.
  [[nodiscard]] Eigen::MatrixXcd embed() const;

 private:
  AlgebraDim dim_;
  std::vector<Eigen::MatrixXd> planes_;
};

}  // namespace rnda
