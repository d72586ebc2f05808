#include "rnda/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rnda/parallel.hpp"

namespace rnda {

HermitianMatrix gram(const AlgebraMatrix& x) {
  return HermitianMatrix(x.conjugate_transpose() * x);
}

HermitianMatrix gram(const AlgebraMatrix& x, const HermitianMatrix& theta) {
  if (x.rows() != theta.size() || x.algebra() != theta.algebra()) {
    throw std::invalid_argument("row scale does not match the sampled matrix");
  }
  return theta.inverse().congruence(x);
}

namespace {

AlgebraMatrix zero_mean(const WishartParams& p) {
  if (!p.central()) {
    throw std::invalid_argument(
        "sampling a noncentral member needs its mean; use the mean constructor");
  }
  const double n = p.n();
  // n > m - 1 already holds, so integrality gives at least m rows.
  if (n != std::floor(n)) {
    throw std::domain_error("sampling requires integer degrees of freedom");
  }
  return AlgebraMatrix(static_cast<int>(n), p.size(), p.algebra());
}

}  // namespace

WishartSampler::WishartSampler(const AlgebraMatrix& mu, const HermitianMatrix& sigma,
                               const HermitianMatrix& theta)
    : mu_(mu),
      sigma_sqrt_(sigma.sqrt_psd()),
      theta_sqrt_(theta.sqrt_psd()),
      theta_inv_(theta.inverse()) {
  if (sigma.size() != mu.cols() || theta.size() != mu.rows() ||
      sigma.algebra() != mu.algebra() || theta.algebra() != mu.algebra()) {
    throw std::invalid_argument("mean, scale, and row scale dimensions do not conform");
  }
  if (mu.rows() < mu.cols()) {
    throw std::domain_error("sampling needs at least as many rows as columns");
  }
}

WishartSampler::WishartSampler(const WishartParams& p)
    : WishartSampler(zero_mean(p), p.sigma(),
                     HermitianMatrix::identity(static_cast<int>(p.n()), p.algebra())) {}

AlgebraMatrix WishartSampler::draw_normal(std::mt19937_64& rng) const {
  const int beta = algebra().beta();
  std::normal_distribution<double> component(0.0, 1.0 / std::sqrt(beta));
  AlgebraMatrix z(rows(), size(), algebra());
  for (int r = 0; r < rows(); ++r) {
    for (int c = 0; c < size(); ++c) {
      for (int p = 0; p < beta; ++p) z.plane(p)(r, c) = component(rng);
    }
  }
  return mu_ + theta_sqrt_.matrix() * z * sigma_sqrt_.matrix();
}

HermitianMatrix WishartSampler::draw(std::mt19937_64& rng) const {
  return theta_inv_.congruence(draw_normal(rng));
}

std::mt19937_64 WishartSampler::chunk_engine(std::uint64_t seed, std::uint64_t chunk) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32),
                    0x9E3779B9u};
  return std::mt19937_64(seq);
}

SampleBatch WishartSampler::spectra(long count, std::uint64_t seed, Execution exec) const {
  if (count < 0) throw std::invalid_argument("sample count must be non-negative");
  SampleBatch batch;
  batch.seed = seed;
  batch.spectra.resize(static_cast<size_t>(count));

  const long chunks = (count + chunk_size - 1) / chunk_size;
  const int threads = worker_count();
  const bool parallel = exec == Execution::parallel;
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (parallel)
  for (long c = 0; c < chunks; ++c) {
    std::mt19937_64 rng = chunk_engine(seed, static_cast<std::uint64_t>(c));
    const long hi = std::min(count, (c + 1) * chunk_size);
    for (long i = c * chunk_size; i < hi; ++i) {
      batch.spectra[static_cast<size_t>(i)] = draw(rng).spectrum();
    }
  }
  return batch;
}

std::vector<McEstimate> mc_lambda_max_cdf(const SampleBatch& batch,
                                          const std::vector<double>& y_grid) {
  if (batch.count() == 0) throw std::invalid_argument("empty sample batch");
  std::vector<McEstimate> out;
  out.reserve(y_grid.size());
  const double total = static_cast<double>(batch.count());
  for (double y : y_grid) {
    long hits = 0;
    for (const Spectrum& row : batch.spectra) {
      if (row[0] < y) ++hits;
    }
    const double p = static_cast<double>(hits) / total;
    out.push_back({p, std::sqrt(p * (1.0 - p) / total), batch.count()});
  }
  return out;
}

std::vector<McEstimate> mc_lambda_max_cdf(const WishartSampler& sampler,
                                          const std::vector<double>& y_grid, long count,
                                          std::uint64_t seed, Execution exec) {
  return mc_lambda_max_cdf(sampler.spectra(count, seed, exec), y_grid);
}

McEstimate mc_importance_normalization(const WishartParams& p, long count, std::uint64_t seed,
                                       const SeriesControl& ctrl, Execution exec) {
  if (count <= 0) throw std::invalid_argument("sample count must be positive");
  const WishartParams central(p.n(), p.sigma());
  const WishartSampler sampler(central);
  std::vector<double> weights(static_cast<size_t>(count), 0.0);

  const long chunks = (count + WishartSampler::chunk_size - 1) / WishartSampler::chunk_size;
  const int threads = worker_count();
  const bool parallel = exec == Execution::parallel;
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (parallel)
  for (long c = 0; c < chunks; ++c) {
    std::mt19937_64 rng = WishartSampler::chunk_engine(seed, static_cast<std::uint64_t>(c));
    const long hi = std::min(count, (c + 1) * WishartSampler::chunk_size);
    for (long i = c * WishartSampler::chunk_size; i < hi; ++i) {
      const HermitianMatrix s = sampler.draw(rng);
      weights[static_cast<size_t>(i)] =
          std::exp(wishart_density_log(s, p, ctrl) - wishart_density_log(s, central, ctrl));
    }
  }

  // Order-fixed serial reduction, so the estimate is reproducible too.
  double sum = 0.0;
  for (double w : weights) sum += w;
  const double mean = sum / static_cast<double>(count);
  double ss = 0.0;
  for (double w : weights) ss += (w - mean) * (w - mean);
  const double se =
      count > 1 ? std::sqrt(ss / static_cast<double>(count - 1) / static_cast<double>(count))
                : 0.0;
  return {mean, se, count};
}

}  // namespace rnda
