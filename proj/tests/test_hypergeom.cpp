// Hypergeometric functions of matrix argument. Oracles: closed forms for
// 0F0 and 1F0, and the scalar series at m = 1 computed by a plain loop.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "rnda/hypergeom.hpp"

using rnda::AlgebraDim;
using rnda::HypParams;
using rnda::SeriesControl;
using rnda::Spectrum;

namespace {

std::vector<double> random_spectrum(std::mt19937& rng, int m, double lo, double hi) {
  std::uniform_real_distribution<double> unif(lo, hi);
  std::vector<double> x(static_cast<size_t>(m));
  for (auto& v : x) v = unif(rng);
  return x;
}

double scalar_series(const std::vector<double>& up, const std::vector<double>& lo,
                     double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= 300; ++k) {
    for (double a : up) term *= a + k - 1;
    for (double b : lo) term /= b + k - 1;
    term *= x / k;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

TEST_CASE("0F0 equals the exponential of the trace") {
  std::mt19937 rng(3);
  SeriesControl ctrl;
  for (int beta : {1, 2, 4, 8}) {
    for (int m = 1; m <= 4; ++m) {
      for (int rep = 0; rep < 4; ++rep) {
        Spectrum x(random_spectrum(rng, m, rep % 2 ? -1.2 : 0.1, 1.6));
        auto res = rnda::hyp_pfq({}, x, AlgebraDim(beta), ctrl);
        CHECK(res.report.converged);
        CHECK(res.value == doctest::Approx(std::exp(x.sum())).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("1F0 equals a determinant power") {
  std::mt19937 rng(5);
  for (int beta : {1, 2, 4, 8}) {
    for (int m = 1; m <= 3; ++m) {
      SeriesControl ctrl;
      ctrl.max_degree = 80;  // 0.5^80 is far below the layer tolerance
      Spectrum x(random_spectrum(rng, m, -0.5, 0.5));
      for (double a : {0.8, 2.5}) {
        double expect = 0.0;
        for (int i = 0; i < m; ++i) expect -= a * std::log1p(-x[i]);
        auto res = rnda::hyp_pfq({{a}, {}}, x, AlgebraDim(beta), ctrl);
        CHECK(res.report.converged);
        CHECK(res.value == doctest::Approx(std::exp(expect)).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("m = 1 reduces to the scalar series for every beta") {
  for (int beta : {1, 2, 4, 8}) {
    AlgebraDim dim(beta);
    SeriesControl ctrl;
    ctrl.max_degree = 100;
    for (double x : {-2.0, 0.3, 4.0}) {
      auto f01 = rnda::hyp_pfq({{}, {1.7}}, Spectrum({x}), dim, ctrl);
      CHECK(f01.value == doctest::Approx(scalar_series({}, {1.7}, x)).epsilon(1e-12));
      auto f11 = rnda::hyp_pfq({{0.9}, {2.4}}, Spectrum({x}), dim, ctrl);
      CHECK(f11.value == doctest::Approx(scalar_series({0.9}, {2.4}, x)).epsilon(1e-12));
    }
    auto f21 = rnda::hyp_pfq({{0.8, 1.1}, {2.2}}, Spectrum({0.6}), dim, ctrl);
    CHECK(f21.value == doctest::Approx(scalar_series({0.8, 1.1}, {2.2}, 0.6)).epsilon(1e-11));
  }
}

TEST_CASE("zero spectrum gives one immediately") {
  auto res = rnda::hyp_pfq({{1.0}, {2.0}}, Spectrum({0.0, 0.0}), AlgebraDim(2), {});
  CHECK(res.value == 1.0);
  CHECK(res.report.converged);
  CHECK(res.report.degrees_used <= 2);
}

TEST_CASE("truncation is flagged, not silently accepted") {
  SeriesControl tight;
  tight.max_degree = 8;
  Spectrum x({16.0, 14.0});
  auto res = rnda::hyp_pfq({}, x, AlgebraDim(1), tight);
  CHECK_FALSE(res.report.converged);
  CHECK(res.report.note.find("max degree") != std::string::npos);
  CHECK(res.value < std::exp(30.0));  // partial sum only

  // The same sum with an adequate budget converges and reports small ratios.
  SeriesControl wide;
  wide.max_degree = 100;
  auto ok = rnda::hyp_pfq({}, x, AlgebraDim(1), wide);
  CHECK(ok.report.converged);
  CHECK(ok.report.last_layer_ratio <= wide.rel_tol);
  CHECK(ok.report.prev_layer_ratio <= wide.rel_tol);
  CHECK(ok.value == doctest::Approx(std::exp(30.0)).epsilon(1e-9));
  // Layer magnitudes rise to a peak and then decay.
  const auto& mags = ok.report.layer_magnitudes;
  CHECK(mags.back() < *std::max_element(mags.begin(), mags.end()));
}

TEST_CASE("parameter and domain errors") {
  CHECK_THROWS_AS((void)rnda::hyp_pfq({{1.5}, {}}, Spectrum({1.0}), AlgebraDim(1), {}),
                  std::domain_error);
  CHECK_THROWS_AS((void)rnda::hyp_pfq({{1.5, 2.0}, {}}, Spectrum({0.3}), AlgebraDim(1), {}),
                  std::invalid_argument);
  // beta = 2, lower parameter 1: the second row offset makes a factor vanish.
  CHECK_THROWS_AS((void)rnda::hyp_pfq({{}, {1.0}}, Spectrum({0.5, 0.2}), AlgebraDim(2), {}),
                  std::invalid_argument);
}

TEST_CASE("two-argument kernel") {
  std::mt19937 rng(9);
  SeriesControl ctrl;
  for (int beta : {1, 2, 4}) {
    AlgebraDim dim(beta);
    Spectrum x(random_spectrum(rng, 3, -0.8, 1.1));
    Spectrum y(random_spectrum(rng, 3, 0.1, 0.9));

    // Symmetry in the two arguments is exact.
    auto xy = rnda::hyp_pfq_two({}, x, y, dim, ctrl);
    auto yx = rnda::hyp_pfq_two({}, y, x, dim, ctrl);
    CHECK(xy.value == yx.value);

    // Unit second argument collapses to the one-argument series.
    Spectrum ones({1.0, 1.0, 1.0});
    auto two = rnda::hyp_pfq_two({}, x, ones, dim, ctrl);
    auto one = rnda::hyp_pfq(HypParams{}, x, dim, ctrl);
    CHECK(two.value == one.value);
  }

  // m = 1: the kernel is exp(x y).
  auto res = rnda::hyp_pfq_two({}, Spectrum({1.3}), Spectrum({-0.7}), AlgebraDim(4), {});
  CHECK(res.value == doctest::Approx(std::exp(-0.91)).epsilon(1e-12));

  CHECK_THROWS_AS(
      (void)rnda::hyp_pfq_two({}, Spectrum({1.0}), Spectrum({1.0, 2.0}), AlgebraDim(1), {}),
      std::invalid_argument);
}

TEST_CASE("prebuilt table overload matches the spectrum overload") {
  Spectrum x({0.4, 1.9, -0.3});
  SeriesControl ctrl;
  rnda::JackTable table(x, AlgebraDim(2), ctrl.max_degree);
  auto a = rnda::hyp_pfq({{}, {3.0}}, table, ctrl);
  auto b = rnda::hyp_pfq({{}, {3.0}}, x, AlgebraDim(2), ctrl);
  CHECK(a.value == b.value);
  CHECK(a.report.degrees_used == b.report.degrees_used);

  // Rescaling through the prefactor matches rebuilding at the scaled spectrum.
  for (double c : {0.35, -1.4}) {
    auto scaled = rnda::hyp_pfq({{}, {3.0}}, table, ctrl, c);
    auto direct = rnda::hyp_pfq({{}, {3.0}}, x.scaled(c), AlgebraDim(2), ctrl);
    CHECK(scaled.value == doctest::Approx(direct.value).epsilon(1e-13));
  }
}

TEST_CASE("two-argument overload rejects mismatched tables") {
  SeriesControl ctrl;
  Spectrum x({0.4, -0.3});
  Spectrum ones({1.0, 1.0});
  rnda::JackTable tx(x, AlgebraDim(2), ctrl.max_degree);
  rnda::JackTable ti(ones, AlgebraDim(2), ctrl.max_degree);

  rnda::JackTable other_beta(ones, AlgebraDim(1), ctrl.max_degree);
  CHECK_THROWS_AS((void)rnda::hyp_pfq_two({}, tx, ti, other_beta, ctrl),
                  std::invalid_argument);

  rnda::JackTable shorter(ones, AlgebraDim(2), ctrl.max_degree / 2);
  CHECK_THROWS_AS((void)rnda::hyp_pfq_two({}, tx, shorter, ti, ctrl), std::invalid_argument);

  rnda::JackTable wider(Spectrum({1.0, 1.0, 1.0}), AlgebraDim(2), ctrl.max_degree);
  CHECK_THROWS_AS((void)rnda::hyp_pfq_two({}, tx, ti, wider, ctrl), std::invalid_argument);

  auto direct = rnda::hyp_pfq_two({}, x, ones, AlgebraDim(2), ctrl);
  auto tables = rnda::hyp_pfq_two({}, tx, ti, ti, ctrl);
  CHECK(tables.value == direct.value);
}
