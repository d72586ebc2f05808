// Jack polynomials in the C normalization. Oracles: the layer sum identity
// sum_{|kappa|=k} C_kappa(x) = (sum x_i)^k, the determinantal formula for
// Schur polynomials at beta = 2, exact homogeneity and stability, and a few
// frozen low-order values obtained by hand.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <stdexcept>

#include "rnda/jack.hpp"

using rnda::AlgebraDim;
using rnda::JackTable;
using rnda::Partition;
using rnda::Spectrum;

namespace {

std::vector<double> random_spectrum(std::mt19937& rng, int m, double lo, double hi) {
  std::uniform_real_distribution<double> unif(lo, hi);
  std::vector<double> x(static_cast<size_t>(m));
  for (auto& v : x) v = unif(rng);
  return x;
}

// Schur polynomial via the bialternant ratio of determinants.
double schur(const Partition& kappa, const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd num(n, n), den(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      num(i, j) = std::pow(x[static_cast<size_t>(i)], kappa.part(j) + n - 1 - j);
      den(i, j) = std::pow(x[static_cast<size_t>(i)], n - 1 - j);
    }
  }
  return num.determinant() / den.determinant();
}

}  // namespace

TEST_CASE("hand-computed values at low weight") {
  Spectrum ones({1.0, 1.0});
  CHECK(rnda::jack_c({2}, ones, AlgebraDim(1)) == doctest::Approx(8.0 / 3.0).epsilon(1e-13));
  CHECK(rnda::jack_c({1, 1}, ones, AlgebraDim(1)) == doctest::Approx(4.0 / 3.0).epsilon(1e-13));

  // C_(1) is the trace for every beta.
  for (int beta : {1, 2, 4, 8}) {
    Spectrum x({0.7, 2.1, 0.4});
    CHECK(rnda::jack_c({1}, x, AlgebraDim(beta)) == doctest::Approx(3.2).epsilon(1e-14));
  }

  // One variable: the weight-k layer is the single partition (k), so
  // C_(k)(x) = x^k exactly.
  for (int beta : {1, 2, 4, 8}) {
    for (int k = 0; k <= 6; ++k) {
      CHECK(rnda::jack_c(Partition{std::vector<int>(1, std::max(k, 0))}, Spectrum({1.3}),
                         AlgebraDim(beta)) == doctest::Approx(std::pow(1.3, k)).epsilon(1e-13));
    }
  }
}

TEST_CASE("layer sums reproduce powers of the trace") {
  std::mt19937 rng(11);
  for (int beta : {1, 2, 4, 8}) {
    for (int m = 1; m <= 4; ++m) {
      for (int rep = 0; rep < 5; ++rep) {
        // Mixed-sign spectra exercise cancellation between layers.
        Spectrum x(random_spectrum(rng, m, rep % 2 ? -1.5 : 0.1, 2.0));
        JackTable table(x, AlgebraDim(beta), 8);
        double tr = x.sum();
        for (int k = 0; k <= 8; ++k) {
          double sum = 0.0;
          for (int id : table.layer_ids(k)) sum += table.scaled_value_by_id(id);
          sum *= std::pow(table.scale(), k);
          CHECK(sum == doctest::Approx(std::pow(tr, k)).epsilon(1e-10));
        }
      }
    }
  }
}

TEST_CASE("beta = 2 values are proportional to Schur polynomials") {
  // The ratio C_kappa / s_kappa depends only on kappa, so it must agree
  // across unrelated spectra.
  std::mt19937 rng(23);
  for (int m : {2, 3}) {
    for (auto& kappa : rnda::enumerate_partitions(4, m)) {
      auto xa = random_spectrum(rng, m, 0.2, 1.9);
      auto xb = random_spectrum(rng, m, 0.2, 1.9);
      double ra = rnda::jack_c(kappa, Spectrum(xa), AlgebraDim(2)) / schur(kappa, xa);
      double rb = rnda::jack_c(kappa, Spectrum(xb), AlgebraDim(2)) / schur(kappa, xb);
      CHECK(ra == doctest::Approx(rb).epsilon(1e-9));
    }
  }
}

TEST_CASE("zero padding leaves values unchanged") {
  Spectrum x({1.7, 0.6});
  Spectrum padded({1.7, 0.6, 0.0, 0.0});
  for (int beta : {1, 4}) {
    JackTable a(x, AlgebraDim(beta), 6);
    JackTable b(padded, AlgebraDim(beta), 6);
    for (int k = 0; k <= 6; ++k) {
      for (auto& kappa : rnda::enumerate_partitions(k, 2)) {
        // Bitwise equality: the added zero variables are skipped outright.
        CHECK(a.scaled_value(kappa) == b.scaled_value(kappa));
      }
    }
  }
}

TEST_CASE("homogeneity in the spectrum") {
  std::mt19937 rng(31);
  Spectrum x(random_spectrum(rng, 3, 0.3, 1.4));
  for (int beta : {1, 8}) {
    for (double c : {0.25, -2.0}) {
      Spectrum cx = x.scaled(c);
      for (auto& kappa : rnda::enumerate_partitions(5, 3)) {
        double lhs = rnda::jack_c(kappa, cx, AlgebraDim(beta));
        double rhs = std::pow(c, 5) * rnda::jack_c(kappa, x, AlgebraDim(beta));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("partitions longer than the spectrum vanish") {
  Spectrum x({1.0, 2.0});
  CHECK(rnda::jack_c({1, 1, 1}, x, AlgebraDim(2)) == 0.0);
  JackTable table(x, AlgebraDim(2), 4);
  CHECK(table.value({2, 1, 1}) == 0.0);
  CHECK_THROWS_AS((void)table.value({5}), std::out_of_range);
}

TEST_CASE("layer query matches enumeration order") {
  Spectrum x({0.9, 0.4, 1.1});
  auto layer = rnda::jack_layer(3, x, AlgebraDim(4));
  auto parts = rnda::enumerate_partitions(3, 3);
  REQUIRE(layer.size() == parts.size());
  for (size_t i = 0; i < parts.size(); ++i) {
    CHECK(layer[i].first == parts[i]);
    CHECK(layer[i].second ==
          doctest::Approx(rnda::jack_c(parts[i], x, AlgebraDim(4))).epsilon(1e-12));
  }
}

TEST_CASE("serial and parallel fills agree bit for bit") {
  std::mt19937 rng(47);
  for (int beta : {1, 2, 4, 8}) {
    Spectrum x(random_spectrum(rng, 4, -1.0, 2.0));
    JackTable serial(x, AlgebraDim(beta), 10, JackTable::Fill::serial);
    JackTable parallel(x, AlgebraDim(beta), 10, JackTable::Fill::parallel);
    for (int k = 0; k <= 10; ++k) {
      auto ids = serial.layer_ids(k);
      for (int id : ids) {
        CHECK(serial.scaled_value_by_id(id) == parallel.scaled_value_by_id(id));
      }
    }
  }
}

TEST_CASE("spectrum ordering and validation") {
  Spectrum x({0.3, 2.0, -1.0});
  CHECK(x[0] == 2.0);
  CHECK(x[2] == -1.0);
  CHECK(x.sum() == doctest::Approx(1.3));
  CHECK(x.max_abs() == 2.0);
  Spectrum flipped = x.scaled(-1.0);
  CHECK(flipped[0] == 1.0);  // re-sorted after sign change
  CHECK_THROWS_AS(Spectrum({std::nan("")}), std::invalid_argument);
}
