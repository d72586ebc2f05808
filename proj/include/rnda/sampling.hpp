#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rnda/algebra.hpp"
#include "rnda/hermitian.hpp"
#include "rnda/hypergeom.hpp"
#include "rnda/wishart.hpp"

namespace rnda {

enum class Execution { serial, parallel };

/// Gram matrix X* X, exactly self-adjoint by construction.
[[nodiscard]] HermitianMatrix gram(const AlgebraMatrix& x);

/// Weighted Gram matrix X* Theta^{-1} X for positive definite Theta.
[[nodiscard]] HermitianMatrix gram(const AlgebraMatrix& x, const HermitianMatrix& theta);

/// Sorted eigenvalue rows of a batch of sampled matrices, together with the
/// seed that produced them.
struct SampleBatch {
  std::uint64_t seed = 0;
  std::vector<Spectrum> spectra;  // each row in decreasing order

  [[nodiscard]] long count() const { return static_cast<long>(spectra.size()); }
};

/// Samples the Wishart family by its definition: X = mu + Theta^{1/2} Z
/// Sigma^{1/2} with independent entries whose beta real components are normal
/// of variance 1/beta, then S = X* Theta^{-1} X. Draws are organized in
/// chunks of 1024 with one RNG substream per (seed, chunk index), so a fixed
/// seed reproduces the same batch under any execution mode and thread count,
/// and a longer run extends a shorter one.
class WishartSampler {
 public:
  /// Central member of a parameter set: zero mean, identity row scale.
  /// The degrees of freedom must be an integer of at least the dimension.
  explicit WishartSampler(const WishartParams& p);

  /// Member with explicit mean and positive definite row scale; the degrees
  /// of freedom are the rows of mu.
  WishartSampler(const AlgebraMatrix& mu, const HermitianMatrix& sigma,
                 const HermitianMatrix& theta);

  [[nodiscard]] int rows() const { return mu_.rows(); }
  [[nodiscard]] int size() const { return mu_.cols(); }
  [[nodiscard]] AlgebraDim algebra() const { return mu_.algebra(); }

  /// One matrix normal draw.
  [[nodiscard]] AlgebraMatrix draw_normal(std::mt19937_64& rng) const;

  /// One draw of S = X* Theta^{-1} X.
  [[nodiscard]] HermitianMatrix draw(std::mt19937_64& rng) const;

  /// Eigenvalue rows of count draws from the stream identified by seed.
  [[nodiscard]] SampleBatch spectra(long count, std::uint64_t seed, Execution exec) const;

  static constexpr long chunk_size = 1024;

  /// Engine for one chunk of the stream identified by seed.
  [[nodiscard]] static std::mt19937_64 chunk_engine(std::uint64_t seed, std::uint64_t chunk);

 private:
  AlgebraMatrix mu_;
  HermitianMatrix sigma_sqrt_;
  HermitianMatrix theta_sqrt_;
  HermitianMatrix theta_inv_;
};

/// A Monte Carlo estimate and its standard error.
struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  long count = 0;
};

/// Empirical P[lambda_max < y] over a batch for each y in the grid, with
/// binomial standard errors.
[[nodiscard]] std::vector<McEstimate> mc_lambda_max_cdf(const SampleBatch& batch,
                                                        const std::vector<double>& y_grid);

/// Convenience: sample count spectra from the given member and reduce.
[[nodiscard]] std::vector<McEstimate> mc_lambda_max_cdf(const WishartSampler& sampler,
                                                        const std::vector<double>& y_grid,
                                                        long count, std::uint64_t seed,
                                                        Execution exec);

/// Importance estimate of the total mass of a noncentral density: the mean of
/// f_p / f_central over draws from the central member at the same n and
/// Sigma. The expected value is one whenever f_p is normalized, so the
/// estimate checks the noncentral normalization without an analytic integral.
[[nodiscard]] McEstimate mc_importance_normalization(const WishartParams& p, long count,
                                                     std::uint64_t seed,
                                                     const SeriesControl& ctrl,
                                                     Execution exec);

}  // namespace rnda
