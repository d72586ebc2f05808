#include "rnda/algebra.hpp"

#include <stdexcept>
#include <utility>

namespace rnda {

namespace {

// Multiplication table of the quaternion basis 1, i, j, k; entry (p, q) says
// which unit e_p e_q lands on and with which sign. The upper-left 2 x 2 block
// is the complex table and (0, 0) alone is the real one.
constexpr int kUnit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
constexpr double kSign[4][4] = {{1.0, 1.0, 1.0, 1.0},
                                {1.0, -1.0, 1.0, -1.0},
                                {1.0, -1.0, -1.0, 1.0},
                                {1.0, 1.0, -1.0, -1.0}};

void require_matrix_capable(AlgebraDim dim) {
  if (!dim.matrix_capable()) {
    throw std::invalid_argument("octonion matrices have no associative representation; "
                                "supply spectra directly instead");
  }
}

}  // namespace

AlgebraMatrix::AlgebraMatrix(int rows, int cols, AlgebraDim dim) : dim_(dim) {
  require_matrix_capable(dim);
  if (rows < 0 || cols < 0) {
    throw std::invalid_argument("matrix dimensions must be nonnegative");
  }
  planes_.assign(static_cast<size_t>(dim.beta()), Eigen::MatrixXd::Zero(rows, cols));
}

AlgebraMatrix AlgebraMatrix::from_planes(std::vector<Eigen::MatrixXd> planes,
                                         AlgebraDim dim) {
  require_matrix_capable(dim);
  if (static_cast<int>(planes.size()) != dim.beta()) {
    throw std::invalid_argument("expected one plane per basis unit");
  }
  for (const auto& p : planes) {
    if (p.rows() != planes[0].rows() || p.cols() != planes[0].cols()) {
      throw std::invalid_argument("planes must share a common shape");
    }
  }
  AlgebraMatrix out(static_cast<int>(planes[0].rows()), static_cast<int>(planes[0].cols()),
                    dim);
  out.planes_ = std::move(planes);
  return out;
}

AlgebraMatrix AlgebraMatrix::identity(int n, AlgebraDim dim) {
  AlgebraMatrix out(n, n, dim);
  out.planes_[0] = Eigen::MatrixXd::Identity(n, n);
  return out;
}

const Eigen::MatrixXd& AlgebraMatrix::plane(int p) const {
  return planes_.at(static_cast<size_t>(p));
}

Eigen::MatrixXd& AlgebraMatrix::plane(int p) { return planes_.at(static_cast<size_t>(p)); }

AlgebraMatrix AlgebraMatrix::conjugate_transpose() const {
  AlgebraMatrix out(cols(), rows(), dim_);
  out.planes_[0] = planes_[0].transpose();
  for (size_t p = 1; p < planes_.size(); ++p) {
    out.planes_[p] = -planes_[p].transpose();
  }
  return out;
}

AlgebraMatrix AlgebraMatrix::operator*(const AlgebraMatrix& rhs) const {
  if (dim_ != rhs.dim_) {
    throw std::invalid_argument("operands live in different algebras");
  }
  if (cols() != rhs.rows()) {
    throw std::invalid_argument("inner dimensions do not match");
  }
  AlgebraMatrix out(rows(), rhs.cols(), dim_);
  const int b = dim_.beta();
  for (int p = 0; p < b; ++p) {
    for (int q = 0; q < b; ++q) {
      out.planes_[static_cast<size_t>(kUnit[p][q])].noalias() +=
          kSign[p][q] * (planes_[static_cast<size_t>(p)] * rhs.planes_[static_cast<size_t>(q)]);
    }
  }
  return out;
}

AlgebraMatrix AlgebraMatrix::operator+(const AlgebraMatrix& rhs) const {
  if (dim_ != rhs.dim_ || rows() != rhs.rows() || cols() != rhs.cols()) {
    throw std::invalid_argument("mismatched operands");
  }
  AlgebraMatrix out = *this;
  for (size_t p = 0; p < planes_.size(); ++p) out.planes_[p] += rhs.planes_[p];
  return out;
}

AlgebraMatrix AlgebraMatrix::operator-(const AlgebraMatrix& rhs) const {
  if (dim_ != rhs.dim_ || rows() != rhs.rows() || cols() != rhs.cols()) {
    throw std::invalid_argument("mismatched operands");
  }
  AlgebraMatrix out = *this;
  for (size_t p = 0; p < planes_.size(); ++p) out.planes_[p] -= rhs.planes_[p];
  return out;
}

AlgebraMatrix AlgebraMatrix::scaled(double c) const {
  AlgebraMatrix out = *this;
  for (auto& p : out.planes_) p *= c;
  return out;
}

double AlgebraMatrix::squared_norm() const {
  double sum = 0.0;
  for (const auto& p : planes_) sum += p.squaredNorm();
  return sum;
}

Eigen::MatrixXcd AlgebraMatrix::embed() const {
  const std::complex<double> i(0.0, 1.0);
  switch (dim_.beta()) {
    case 1:
      return planes_[0].cast<std::complex<double>>();
    case 2:
      return planes_[0].cast<std::complex<double>>() + i * planes_[1].cast<std::complex<double>>();
    default: {
      const Eigen::MatrixXcd z1 =
          planes_[0].cast<std::complex<double>>() + i * planes_[1].cast<std::complex<double>>();
      const Eigen::MatrixXcd z2 =
          planes_[2].cast<std::complex<double>>() + i * planes_[3].cast<std::complex<double>>();
      Eigen::MatrixXcd out(2 * rows(), 2 * cols());
      out.topLeftCorner(rows(), cols()) = z1;
      out.topRightCorner(rows(), cols()) = z2;
      out.bottomLeftCorner(rows(), cols()) = -z2.conjugate();
      out.bottomRightCorner(rows(), cols()) = z1.conjugate();
      return out;
    }
  }
}

}  // namespace rnda
