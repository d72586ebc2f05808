#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "rnda/algebra.hpp"
#include "rnda/hermitian.hpp"

using rnda::AlgebraDim;
using rnda::AlgebraMatrix;
using rnda::HermitianMatrix;
using rnda::Spectrum;

namespace {

AlgebraMatrix random_mat(std::mt19937& rng, int r, int c, AlgebraDim dim) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  AlgebraMatrix a(r, c, dim);
  for (int p = 0; p < dim.beta(); ++p) {
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < c; ++j) a.plane(p)(i, j) = u(rng);
    }
  }
  return a;
}

AlgebraMatrix quat(double a, double b, double c, double d) {
  AlgebraMatrix q(1, 1, AlgebraDim(4));
  q.plane(0)(0, 0) = a;
  q.plane(1)(0, 0) = b;
  q.plane(2)(0, 0) = c;
  q.plane(3)(0, 0) = d;
  return q;
}

// Positive definite test matrix g^* g + s I.
HermitianMatrix random_pd(std::mt19937& rng, int m, AlgebraDim dim, double shift) {
  AlgebraMatrix g = random_mat(rng, m + 1, m, dim);
  AlgebraMatrix gram = g.conjugate_transpose() * g;
  AlgebraMatrix bump = AlgebraMatrix::identity(m, dim).scaled(shift);
  return HermitianMatrix(gram + bump);
}

}  // namespace

TEST_CASE("quaternion unit multiplication") {
  const AlgebraMatrix i = quat(0, 1, 0, 0);
  const AlgebraMatrix j = quat(0, 0, 1, 0);
  const AlgebraMatrix k = quat(0, 0, 0, 1);

  CHECK((i * j - k).squared_norm() == 0.0);
  CHECK((j * i + k).squared_norm() == 0.0);
  CHECK((j * k - i).squared_norm() == 0.0);
  CHECK((k * i - j).squared_norm() == 0.0);
  CHECK((i * i + quat(1, 0, 0, 0)).squared_norm() == 0.0);
  CHECK((j * j + quat(1, 0, 0, 0)).squared_norm() == 0.0);
  CHECK((k * k + quat(1, 0, 0, 0)).squared_norm() == 0.0);
}

TEST_CASE("quaternion norm is multiplicative") {
  std::mt19937 rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    AlgebraMatrix p = random_mat(rng, 1, 1, AlgebraDim(4));
    AlgebraMatrix q = random_mat(rng, 1, 1, AlgebraDim(4));
    CHECK((p * q).squared_norm() ==
          doctest::Approx(p.squared_norm() * q.squared_norm()).epsilon(1e-12));
  }
}

TEST_CASE("complex embedding is an algebra homomorphism") {
  std::mt19937 rng(23);
  for (int beta : {1, 2, 4}) {
    AlgebraDim dim(beta);
    AlgebraMatrix p = random_mat(rng, 3, 2, dim);
    AlgebraMatrix q = random_mat(rng, 2, 4, dim);
    CHECK((p * q).embed().isApprox(p.embed() * q.embed(), 1e-12));
    CHECK(p.conjugate_transpose().embed().isApprox(p.embed().adjoint(), 1e-14));

    AlgebraMatrix r = random_mat(rng, 4, 3, dim);
    CHECK(((p * q) * r).embed().isApprox((p * (q * r)).embed(), 1e-12));

    AlgebraMatrix id = AlgebraMatrix::identity(3, dim);
    CHECK((id * p).embed().isApprox(p.embed(), 1e-15));
  }
}

TEST_CASE("octonion matrices are rejected") {
  CHECK_THROWS_AS(AlgebraMatrix(2, 2, AlgebraDim(8)), std::invalid_argument);
  CHECK_THROWS_AS((void)AlgebraMatrix::identity(2, AlgebraDim(8)), std::invalid_argument);
}

TEST_CASE("self-adjoint validation and exact symmetrization") {
  std::mt19937 rng(37);
  AlgebraMatrix g = random_mat(rng, 3, 3, AlgebraDim(4));
  CHECK_THROWS_AS(HermitianMatrix{g}, std::invalid_argument);

  AlgebraMatrix h = g + g.conjugate_transpose();
  HermitianMatrix wrapped(h);
  CHECK(wrapped.matrix().plane(0).isApprox(wrapped.matrix().plane(0).transpose()));
  for (int p = 1; p < 4; ++p) {
    CHECK(wrapped.matrix().plane(p).isApprox(-wrapped.matrix().plane(p).transpose()));
  }

  CHECK_THROWS_AS(HermitianMatrix(random_mat(rng, 2, 3, AlgebraDim(2))),
                  std::invalid_argument);
}

TEST_CASE("spectrum matches the embedding, with quaternion pairs averaged") {
  std::mt19937 rng(41);
  for (int beta : {1, 2, 4}) {
    AlgebraDim dim(beta);
    AlgebraMatrix g = random_mat(rng, 4, 4, dim);
    HermitianMatrix h(g + g.conjugate_transpose());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.matrix().embed());
    std::vector<double> expect;
    if (beta == 4) {
      for (Eigen::Index t = 0; t + 1 < solver.eigenvalues().size(); t += 2) {
        expect.push_back(0.5 * (solver.eigenvalues()[t] + solver.eigenvalues()[t + 1]));
      }
      // the embedding really does double every eigenvalue
      for (Eigen::Index t = 0; t + 1 < solver.eigenvalues().size(); t += 2) {
        CHECK(solver.eigenvalues()[t] ==
              doctest::Approx(solver.eigenvalues()[t + 1]).epsilon(1e-10));
      }
    } else {
      for (Eigen::Index t = 0; t < solver.eigenvalues().size(); ++t) {
        expect.push_back(solver.eigenvalues()[t]);
      }
    }
    Spectrum s = h.spectrum();
    std::sort(expect.begin(), expect.end(), std::greater<>());
    REQUIRE(s.size() == 4);
    for (int t = 0; t < 4; ++t) {
      CHECK(s[t] == doctest::Approx(expect[static_cast<size_t>(t)]).epsilon(1e-12));
    }

    double trace = 0.0;
    for (int t = 0; t < 4; ++t) trace += s[t];
    CHECK(trace == doctest::Approx(h.trace()).epsilon(1e-12));
  }
}

TEST_CASE("diagonal spectra are exact") {
  for (int beta : {1, 2, 4}) {
    HermitianMatrix d = HermitianMatrix::diagonal({2.5, -1.0, 0.25}, AlgebraDim(beta));
    Spectrum s = d.spectrum();
    CHECK(s[0] == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(s[1] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(s[2] == doctest::Approx(-1.0).epsilon(1e-14));
  }
}

TEST_CASE("inverse, square roots, and log determinant") {
  std::mt19937 rng(53);
  for (int beta : {1, 2, 4}) {
    AlgebraDim dim(beta);
    const int m = 3;
    HermitianMatrix h = random_pd(rng, m, dim, 0.4);
    const Eigen::MatrixXcd he = h.matrix().embed();
    const Eigen::Index n = he.rows();

    CHECK(h.inverse().matrix().embed().isApprox(he.inverse(), 1e-10));

    HermitianMatrix root = h.sqrt_psd();
    CHECK((root.matrix() * root.matrix()).embed().isApprox(he, 1e-10));

    HermitianMatrix invroot = h.inv_sqrt_pd();
    CHECK((invroot.matrix() * h.matrix() * invroot.matrix())
              .embed()
              .isApprox(Eigen::MatrixXcd::Identity(n, n), 1e-10));

    double logdet = 0.0;
    Spectrum s = h.spectrum();
    for (int t = 0; t < m; ++t) logdet += std::log(s[t]);
    CHECK(h.logdet_pd() == doctest::Approx(logdet).epsilon(1e-12));
  }
}

TEST_CASE("indefinite and singular matrices are refused where positivity matters") {
  HermitianMatrix ind = HermitianMatrix::diagonal({1.0, -0.5}, AlgebraDim(2));
  CHECK_THROWS_AS((void)ind.logdet_pd(), std::domain_error);
  CHECK_THROWS_AS((void)ind.sqrt_psd(), std::domain_error);
  CHECK_THROWS_AS((void)ind.inv_sqrt_pd(), std::domain_error);

  HermitianMatrix sing = HermitianMatrix::diagonal({1.0, 0.0}, AlgebraDim(1));
  CHECK_THROWS_AS((void)sing.inverse(), std::domain_error);
  CHECK_NOTHROW((void)sing.sqrt_psd());
}

TEST_CASE("trace of a product via plane-wise inner products") {
  std::mt19937 rng(67);
  for (int beta : {1, 2, 4}) {
    AlgebraDim dim(beta);
    AlgebraMatrix g1 = random_mat(rng, 3, 3, dim);
    AlgebraMatrix g2 = random_mat(rng, 3, 3, dim);
    HermitianMatrix a(g1 + g1.conjugate_transpose());
    HermitianMatrix b(g2 + g2.conjugate_transpose());

    // The embedded trace counts every quaternion eigenvalue twice.
    const double mult = beta == 4 ? 2.0 : 1.0;
    const double expect = (a.matrix().embed() * b.matrix().embed()).trace().real() / mult;
    CHECK(a.trace_product(b) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("congruence and weighted product spectra") {
  std::mt19937 rng(71);
  for (int beta : {1, 2, 4}) {
    AlgebraDim dim(beta);
    const int m = 3;
    HermitianMatrix a = random_pd(rng, m, dim, 0.3);
    AlgebraMatrix g = random_mat(rng, m, m, dim);
    HermitianMatrix b(g + g.conjugate_transpose());  // indefinite in general

    // spec(a^{1/2} b a^{1/2}) equals the spectrum of the plain product ab.
    Spectrum s = rnda::product_spectrum(a, b);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a.matrix().embed() *
                                                       b.matrix().embed());
    std::vector<double> expect;
    for (Eigen::Index t = 0; t < solver.eigenvalues().size(); ++t) {
      CHECK(std::abs(solver.eigenvalues()[t].imag()) < 1e-9);
      expect.push_back(solver.eigenvalues()[t].real());
    }
    std::sort(expect.begin(), expect.end(), std::greater<>());
    if (beta == 4) {
      std::vector<double> paired;
      for (size_t t = 0; t + 1 < expect.size(); t += 2) {
        paired.push_back(0.5 * (expect[t] + expect[t + 1]));
      }
      expect = paired;
    }
    REQUIRE(s.size() == m);
    for (int t = 0; t < m; ++t) {
      CHECK(s[t] == doctest::Approx(expect[static_cast<size_t>(t)]).epsilon(1e-9));
    }

    // Gram matrices of tall blocks are positive semidefinite.
    AlgebraMatrix x = random_mat(rng, 5, m, dim);
    HermitianMatrix gram = HermitianMatrix::identity(5, dim).congruence(x);
    Spectrum gs = gram.spectrum();
    CHECK(gs[m - 1] >= -1e-12);
  }
}
