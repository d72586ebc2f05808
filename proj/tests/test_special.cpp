// Partitions, generalized Pochhammer symbols, multivariate gamma and Stiefel
// volumes. Expected values come from hand reductions to scalar gamma
// functions and from brute-force counting, not from the code under test.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "rnda/special.hpp"

using rnda::AlgebraDim;
using rnda::Partition;

namespace {

// Independent counter for partitions of k into at most p parts.
int count_partitions(int k, int p, int max_first) {
  if (k == 0) return 1;
  if (p == 0) return 0;
  int total = 0;
  for (int first = std::min(k, max_first); first >= 1; --first) {
    total += count_partitions(k - first, p - 1, first);
  }
  return total;
}

double rising(double a, int k) {
  double r = 1.0;
  for (int j = 0; j < k; ++j) r *= a + j;
  return r;
}

}  // namespace

TEST_CASE("algebra dimension accepts exactly 1, 2, 4, 8") {
  for (int beta : {1, 2, 4, 8}) CHECK(AlgebraDim(beta).beta() == beta);
  for (int beta : {0, 3, 5, 6, 7, 16, -1}) {
    CHECK_THROWS_AS(AlgebraDim{beta}, std::invalid_argument);
  }
  CHECK(AlgebraDim(2).alpha() == doctest::Approx(1.0));
  CHECK(AlgebraDim(8).alpha() == doctest::Approx(0.25));
  CHECK(AlgebraDim(4).matrix_capable());
  CHECK_FALSE(AlgebraDim(8).matrix_capable());
}

TEST_CASE("partition normalization and accessors") {
  Partition p{4, 2, 1};
  CHECK(p.weight() == 7);
  CHECK(p.length() == 3);
  CHECK(p.part(0) == 4);
  CHECK(p.part(5) == 0);
  CHECK(Partition{3, 0, 0} == Partition{3});
  CHECK(Partition{}.weight() == 0);
  CHECK_THROWS_AS(Partition({1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Partition({2, -1}), std::invalid_argument);

  CHECK(Partition{3, 1}.conjugate() == std::vector<int>{2, 1, 1});
  CHECK(Partition{2, 2, 1}.conjugate() == std::vector<int>{3, 2});
}

TEST_CASE("partition enumeration order and counts") {
  auto parts = rnda::enumerate_partitions(3, 2);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == Partition{3});
  CHECK(parts[1] == Partition{2, 1});

  CHECK(rnda::enumerate_partitions(0, 3).size() == 1);
  CHECK(rnda::enumerate_partitions(0, 3)[0] == Partition{});

  for (int k = 0; k <= 10; ++k) {
    for (int m = 1; m <= 5; ++m) {
      auto layer = rnda::enumerate_partitions(k, m);
      CHECK(static_cast<int>(layer.size()) == count_partitions(k, m, k));
      for (const auto& q : layer) {
        CHECK(q.weight() == k);
        CHECK(q.length() <= m);
      }
      // Decreasing lexicographic order.
      for (size_t i = 1; i < layer.size(); ++i) CHECK(layer[i] < layer[i - 1]);
    }
  }
}

TEST_CASE("generalized Pochhammer frozen value and row structure") {
  // [2]_{(2,1)}^{beta=2}: rows give (2)(3) * (1) = 6.
  CHECK(rnda::gen_pochhammer(2.0, {2, 1}, AlgebraDim(2)) == doctest::Approx(6.0));

  // Single-row partitions reduce to the scalar rising factorial.
  for (int k = 0; k <= 6; ++k) {
    CHECK(rnda::gen_pochhammer(2.5, Partition{std::vector<int>(1, k)}, AlgebraDim(4)) ==
          doctest::Approx(rising(2.5, k)));
  }

  // Rows factor: [a]_kappa = prod_i (a - (i-1) beta/2)_{k_i}.
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unif(0.5, 5.0);
  for (int rep = 0; rep < 50; ++rep) {
    double a = unif(rng);
    for (int beta : {1, 2, 4, 8}) {
      Partition kappa{3, 2, 2, 1};
      double expect = rising(a, 3) * rising(a - beta / 2.0, 2) *
                      rising(a - beta, 2) * rising(a - 1.5 * beta, 1);
      CHECK(rnda::gen_pochhammer(a, kappa, AlgebraDim(beta)) ==
            doctest::Approx(expect).epsilon(1e-12));
    }
  }

  CHECK(rnda::gen_pochhammer(1.0, Partition{}, AlgebraDim(1)) == doctest::Approx(1.0));
}

TEST_CASE("multivariate gamma reduces to scalar gamma products") {
  // Gamma_2^{beta=2}[2] = pi^1 * Gamma(2) * Gamma(1) = pi.
  CHECK(rnda::mv_gamma_log(2.0, 2, AlgebraDim(2)) ==
        doctest::Approx(std::log(std::numbers::pi)).epsilon(1e-14));

  // m = 1 is the ordinary log gamma for every beta.
  for (int beta : {1, 2, 4, 8}) {
    for (double a : {0.3, 1.0, 2.7, 9.5}) {
      CHECK(rnda::mv_gamma_log(a, 1, AlgebraDim(beta)) ==
            doctest::Approx(std::lgamma(a)).epsilon(1e-14));
    }
  }

  // Direct product form, log space, m up to 4.
  for (int beta : {1, 2, 4, 8}) {
    for (int m = 1; m <= 4; ++m) {
      double a = 0.5 * beta * (m - 1) + 1.25;
      double expect = 0.25 * m * (m - 1) * beta * std::log(std::numbers::pi);
      for (int i = 0; i < m; ++i) expect += std::lgamma(a - 0.5 * beta * i);
      CHECK(rnda::mv_gamma_log(a, m, AlgebraDim(beta)) ==
            doctest::Approx(expect).epsilon(1e-13));
    }
  }
}

TEST_CASE("multivariate gamma recurrence in a") {
  // Gamma_m[a+1] / Gamma_m[a] = prod_i (a - (i-1) beta/2), i.e. [a]_{(1^m)}.
  for (int beta : {1, 2, 4, 8}) {
    AlgebraDim dim(beta);
    for (int m = 1; m <= 4; ++m) {
      double a = 0.5 * beta * (m - 1) + 0.75;
      double lhs = rnda::mv_gamma_log(a + 1.0, m, dim) - rnda::mv_gamma_log(a, m, dim);
      double rhs = std::log(rnda::gen_pochhammer(a, Partition(std::vector<int>(m, 1)), dim));
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("multivariate gamma pole domain") {
  CHECK_THROWS_AS((void)rnda::mv_gamma_log(1.0, 3, AlgebraDim(1)), std::domain_error);
  CHECK_THROWS_AS((void)rnda::mv_gamma_log(1.0, 2, AlgebraDim(2)), std::domain_error);
  CHECK_THROWS_AS((void)rnda::mv_gamma_log(-0.5, 1, AlgebraDim(1)), std::domain_error);
  CHECK_NOTHROW((void)rnda::mv_gamma_log(1.0 + 1e-9, 3, AlgebraDim(1)));
}

TEST_CASE("Stiefel volumes of spheres") {
  // Frames of one vector are spheres: S^{n beta - 1} surface areas.
  // beta=1, n=2: circle, 2 pi. beta=2, n=1: also a circle in C. beta=1, n=3: 4 pi.
  CHECK(rnda::stiefel_volume_log(1, 2, AlgebraDim(1)) ==
        doctest::Approx(std::log(2 * std::numbers::pi)).epsilon(1e-14));
  CHECK(rnda::stiefel_volume_log(1, 1, AlgebraDim(2)) ==
        doctest::Approx(std::log(2 * std::numbers::pi)).epsilon(1e-14));
  CHECK(rnda::stiefel_volume_log(1, 3, AlgebraDim(1)) ==
        doctest::Approx(std::log(4 * std::numbers::pi)).epsilon(1e-14));
  // S^3 in H^1: 2 pi^2.
  CHECK(rnda::stiefel_volume_log(1, 1, AlgebraDim(4)) ==
        doctest::Approx(std::log(2 * std::numbers::pi * std::numbers::pi)).epsilon(1e-14));

  CHECK_THROWS_AS((void)rnda::stiefel_volume_log(3, 2, AlgebraDim(1)), std::invalid_argument);
}

TEST_CASE("full frame volume matches iterated sphere product for beta=1") {
  // V(m=2, n=2, beta=1) = vol(O(2)) = 2 * 2 pi * ... : check against the
  // explicit product prod_{i=0}^{m-1} area(S^{n-i-1}) with area(S^{d-1}) =
  // 2 pi^{d/2} / Gamma(d/2).
  auto sphere_log = [](int d) {
    return std::numbers::ln2 + 0.5 * d * std::log(std::numbers::pi) - std::lgamma(0.5 * d);
  };
  for (int n = 2; n <= 5; ++n) {
    for (int m = 1; m <= n; ++m) {
      double expect = 0.0;
      for (int i = 0; i < m; ++i) expect += sphere_log(n - i);
      CHECK(rnda::stiefel_volume_log(m, n, AlgebraDim(1)) ==
            doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("tau table") {
  CHECK(rnda::tau(3, AlgebraDim(1)) == 0);
  CHECK(rnda::tau(3, AlgebraDim(2)) == -3);
  CHECK(rnda::tau(3, AlgebraDim(4)) == -6);
  CHECK(rnda::tau(2, AlgebraDim(8)) == -8);
  CHECK(rnda::tau(1, AlgebraDim(8)) == -4);
}
