#include "rnda/hermitian.hpp"

#include <cmath>
#include <stdexcept>

namespace rnda {

namespace {

// Relative threshold below which an eigenvalue counts as zero rounding noise.
constexpr double kRankTol = 1e-12;

}  // namespace

struct HermitianMatrix::Decomposition {
  Eigen::MatrixXcd vectors;
  Eigen::VectorXd values;  // ascending, length 2m in the quaternion embedding
};

HermitianMatrix::HermitianMatrix(const AlgebraMatrix& a, double tol) : mat_(a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("self-adjoint matrices must be square");
  }
  const double scale = std::sqrt(a.squared_norm()) + 1.0;
  double drift = 0.0;
  drift = std::max(drift, (a.plane(0) - a.plane(0).transpose()).norm());
  for (int p = 1; p < a.algebra().beta(); ++p) {
    drift = std::max(drift, (a.plane(p) + a.plane(p).transpose()).norm());
  }
  if (drift > tol * scale) {
    throw std::invalid_argument("matrix is not self-adjoint within tolerance");
  }
  mat_.plane(0) = 0.5 * (a.plane(0) + a.plane(0).transpose()).eval();
  for (int p = 1; p < a.algebra().beta(); ++p) {
    mat_.plane(p) = 0.5 * (a.plane(p) - a.plane(p).transpose()).eval();
  }
}

HermitianMatrix::HermitianMatrix(const Eigen::MatrixXd& sym, double tol)
    : HermitianMatrix(AlgebraMatrix::from_planes({sym}, AlgebraDim(1)), tol) {}

HermitianMatrix HermitianMatrix::identity(int n, AlgebraDim dim) {
  return HermitianMatrix(AlgebraMatrix::identity(n, dim), Trusted{});
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& d, AlgebraDim dim) {
  AlgebraMatrix a(static_cast<int>(d.size()), static_cast<int>(d.size()), dim);
  for (size_t i = 0; i < d.size(); ++i) {
    a.plane(0)(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
  }
  return HermitianMatrix(std::move(a), Trusted{});
}

HermitianMatrix::Decomposition HermitianMatrix::decompose() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(mat_.embed());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed to converge");
  }
  return {solver.eigenvectors(), solver.eigenvalues()};
}

Spectrum HermitianMatrix::spectrum() const {
  const Decomposition d = decompose();
  std::vector<double> out;
  if (algebra().beta() == 4) {
    out.reserve(static_cast<size_t>(d.values.size() / 2));
    for (Eigen::Index t = 0; t + 1 < d.values.size(); t += 2) {
      out.push_back(0.5 * (d.values[t] + d.values[t + 1]));
    }
  } else {
    out.assign(d.values.data(), d.values.data() + d.values.size());
  }
  return Spectrum(out);
}

double HermitianMatrix::logdet_pd() const {
  const Decomposition d = decompose();
  const double mult = algebra().beta() == 4 ? 0.5 : 1.0;
  double sum = 0.0;
  for (Eigen::Index t = 0; t < d.values.size(); ++t) {
    if (d.values[t] <= 0.0) {
      throw std::domain_error("matrix is not positive definite");
    }
    sum += std::log(d.values[t]);
  }
  return mult * sum;
}

HermitianMatrix HermitianMatrix::reconstruct(const Decomposition& d,
                                             const Eigen::VectorXd& new_values,
                                             AlgebraDim dim) {
  const Eigen::MatrixXcd f =
      d.vectors * new_values.asDiagonal() * d.vectors.adjoint();
  const Eigen::Index m = dim.beta() == 4 ? f.rows() / 2 : f.rows();
  AlgebraMatrix a(static_cast<int>(m), static_cast<int>(m), dim);
  switch (dim.beta()) {
    case 1:
      a.plane(0) = f.real();
      break;
    case 2:
      a.plane(0) = f.real();
      a.plane(1) = f.imag();
      break;
    default: {
      // Average the two diagonal and off-diagonal blocks: that projects the
      // rounded result back onto the image of the quaternion embedding.
      const Eigen::MatrixXcd z1 =
          0.5 * (f.topLeftCorner(m, m) + f.bottomRightCorner(m, m).conjugate());
      const Eigen::MatrixXcd z2 =
          0.5 * (f.topRightCorner(m, m) - f.bottomLeftCorner(m, m).conjugate());
      a.plane(0) = z1.real();
      a.plane(1) = z1.imag();
      a.plane(2) = z2.real();
      a.plane(3) = z2.imag();
      break;
    }
  }
  a.plane(0) = 0.5 * (a.plane(0) + a.plane(0).transpose()).eval();
  for (int p = 1; p < dim.beta(); ++p) {
    a.plane(p) = 0.5 * (a.plane(p) - a.plane(p).transpose()).eval();
  }
  return HermitianMatrix(std::move(a), Trusted{});
}

HermitianMatrix HermitianMatrix::inverse() const {
  Decomposition d = decompose();
  const double top = d.values.cwiseAbs().maxCoeff();
  Eigen::VectorXd inv(d.values.size());
  for (Eigen::Index t = 0; t < d.values.size(); ++t) {
    if (std::abs(d.values[t]) <= kRankTol * top) {
      throw std::domain_error("matrix is numerically singular");
    }
    inv[t] = 1.0 / d.values[t];
  }
  return reconstruct(d, inv, algebra());
}

HermitianMatrix HermitianMatrix::sqrt_psd() const {
  Decomposition d = decompose();
  const double top = std::max(d.values.cwiseAbs().maxCoeff(), 1.0);
  Eigen::VectorXd root(d.values.size());
  for (Eigen::Index t = 0; t < d.values.size(); ++t) {
    if (d.values[t] < -kRankTol * top) {
      throw std::domain_error("matrix is not positive semidefinite");
    }
    root[t] = std::sqrt(std::max(d.values[t], 0.0));
  }
  return reconstruct(d, root, algebra());
}

HermitianMatrix HermitianMatrix::inv_sqrt_pd() const {
  Decomposition d = decompose();
  const double top = d.values.cwiseAbs().maxCoeff();
  Eigen::VectorXd root(d.values.size());
  for (Eigen::Index t = 0; t < d.values.size(); ++t) {
    if (d.values[t] <= kRankTol * top) {
      throw std::domain_error("matrix is not positive definite");
    }
    root[t] = 1.0 / std::sqrt(d.values[t]);
  }
  return reconstruct(d, root, algebra());
}

HermitianMatrix HermitianMatrix::congruence(const AlgebraMatrix& c) const {
  return HermitianMatrix(c.conjugate_transpose() * mat_ * c);
}

double HermitianMatrix::trace_product(const HermitianMatrix& b) const {
  if (algebra() != b.algebra() || size() != b.size()) {
    throw std::invalid_argument("mismatched operands");
  }
  double sum = 0.0;
  for (int p = 0; p < algebra().beta(); ++p) {
    sum += mat_.plane(p).cwiseProduct(b.mat_.plane(p)).sum();
  }
  return sum;
}

Spectrum product_spectrum(const HermitianMatrix& a, const HermitianMatrix& b) {
  const HermitianMatrix root = a.sqrt_psd();
  return b.congruence(root.matrix()).spectrum();
}

}  // namespace rnda
