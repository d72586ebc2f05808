#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rnda/algebra.hpp"
#include "rnda/jack.hpp"

namespace rnda {

/// Self-adjoint matrix over the real, complex, or quaternion algebra. The
/// symmetric plane 0 and antisymmetric planes 1..beta-1 are validated on
/// construction. Eigenvalues are real; for beta = 4 they come from the
/// complex embedding, where each one appears twice and the pairs are averaged
/// away.
class HermitianMatrix {
 public:
  /// Validates self-adjointness of the wrapped matrix up to tol (relative to
  /// its norm) and symmetrizes exactly, so downstream algebra can rely on it.
  explicit HermitianMatrix(const AlgebraMatrix& a, double tol = 1e-10);

  /// Convenience for beta = 1: wraps a plain symmetric matrix.
  explicit HermitianMatrix(const Eigen::MatrixXd& sym, double tol = 1e-10);

  [[nodiscard]] static HermitianMatrix identity(int n, AlgebraDim dim);

  /// Diagonal matrix with the given entries, in any algebra.
  [[nodiscard]] static HermitianMatrix diagonal(const std::vector<double>& d, AlgebraDim dim);

  [[nodiscard]] int size() const { return mat_.rows(); }
  [[nodiscard]] AlgebraDim algebra() const { return mat_.algebra(); }
  [[nodiscard]] const AlgebraMatrix& matrix() const { return mat_; }

  /// Eigenvalues in decreasing order.
  [[nodiscard]] Spectrum spectrum() const;

  [[nodiscard]] double trace() const { return mat_.real_trace(); }

  /// log det of a positive definite matrix (quaternion eigenvalue pairs are
  /// counted once). Throws std::domain_error otherwise.
  [[nodiscard]] double logdet_pd() const;

  /// Throws std::domain_error when the matrix is singular.
  [[nodiscard]] HermitianMatrix inverse() const;

  /// Square root of a positive semidefinite matrix; eigenvalues within
  /// rounding of zero are clamped, genuinely negative ones throw
  /// std::domain_error.
  [[nodiscard]] HermitianMatrix sqrt_psd() const;

  /// Inverse square root; requires positive definiteness.
  [[nodiscard]] HermitianMatrix inv_sqrt_pd() const;

  /// c^* (this) c for an arbitrary conformable matrix c.
  [[nodiscard]] HermitianMatrix congruence(const AlgebraMatrix& c) const;

  /// Real trace of (this * b); equals the plane-wise Frobenius inner product.
  [[nodiscard]] double trace_product(const HermitianMatrix& b) const;

 private:
  struct Decomposition;
  struct Trusted {};
  HermitianMatrix(AlgebraMatrix a, Trusted) : mat_(std::move(a)) {}

  [[nodiscard]] Decomposition decompose() const;
  [[nodiscard]] static HermitianMatrix reconstruct(const Decomposition& d,
                                                   const Eigen::VectorXd& new_values,
                                                   AlgebraDim dim);

  AlgebraMatrix mat_;
};

/// Eigenvalues of a (PSD-weighted) product: spectrum of a^{1/2} b a^{1/2},
/// which matches the spectrum of the non-self-adjoint products ab and ba when
/// a is positive semidefinite. Requires a to be PSD; b may be indefinite.
[[nodiscard]] Spectrum product_spectrum(const HermitianMatrix& a, const HermitianMatrix& b);

}  // namespace rnda
