#pragma once

#include <initializer_list>
#include <vector>

namespace rnda {

/// One of the four real normed division algebras, identified by its real
/// dimension beta: 1 (reals), 2 (complexes), 4 (quaternions), 8 (octonions).
/// Octonions participate in every closed-form formula but have no matrix
/// representation here, so matrix-valued operations reject beta = 8.
class AlgebraDim {
 public:
  explicit AlgebraDim(int beta);

  [[nodiscard]] int beta() const { return beta_; }

  /// Jack polynomial parameter alpha = 2/beta.
  [[nodiscard]] double alpha() const { return 2.0 / beta_; }

  /// Whether matrices over this algebra can be represented and decomposed.
  [[nodiscard]] bool matrix_capable() const { return beta_ <= 4; }

  friend bool operator==(AlgebraDim a, AlgebraDim b) { return a.beta_ == b.beta_; }
  friend bool operator!=(AlgebraDim a, AlgebraDim b) { return a.beta_ != b.beta_; }

 private:
  int beta_;
};

/// Integer partition: a non-increasing tuple of positive parts. Trailing
/// zeros in the input are stripped, so (3, 0) and (3) are the same partition.
class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<int> parts);
  explicit Partition(std::vector<int> parts);

  /// Sum of the parts.
  [[nodiscard]] int weight() const { return weight_; }

  /// Number of positive parts.
  [[nodiscard]] int length() const { return static_cast<int>(parts_.size()); }

  /// i-th part (0-based); zero beyond the length.
  [[nodiscard]] int part(int i) const {
    return i < length() ? parts_[static_cast<size_t>(i)] : 0;
  }

  [[nodiscard]] const std::vector<int>& parts() const { return parts_; }

  /// Conjugate (transposed diagram) parts.
  [[nodiscard]] std::vector<int> conjugate() const;

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.parts_ == b.parts_;
  }
  /// Lexicographic order on the part tuples; used only as a container key.
  friend bool operator<(const Partition& a, const Partition& b) {
    return a.parts_ < b.parts_;
  }

 private:
  std::vector<int> parts_;
  int weight_ = 0;
};

/// All partitions of `weight` into at most `max_parts` parts, in decreasing
/// lexicographic order: (k) first, (1, 1, ..., 1) last when it fits.
[[nodiscard]] std::vector<Partition> enumerate_partitions(int weight, int max_parts);

/// Generalized Pochhammer symbol [a]_kappa^beta =
/// prod_i prod_{j=0}^{kappa_i - 1} (a - (i-1) beta/2 + j).
[[nodiscard]] double gen_pochhammer(double a, const Partition& kappa, AlgebraDim dim);

/// Log of the multivariate gamma function Gamma_m^beta[a] =
/// pi^{m(m-1)beta/4} prod_i Gamma(a - (i-1) beta/2).
/// Throws std::domain_error when a <= (m-1) beta/2 (at or beyond the poles).
[[nodiscard]] double mv_gamma_log(double a, int m, AlgebraDim dim);

/// Log volume of the Stiefel manifold of m orthonormal frames in F^n.
/// Requires n >= m.
[[nodiscard]] double stiefel_volume_log(int m, int n, AlgebraDim dim);

/// Algebra-dependent exponent correction tau appearing in eigenvalue
/// densities: 0, -m, -2m, -4m for beta = 1, 2, 4, 8.
[[nodiscard]] int tau(int m, AlgebraDim dim);

}  // namespace rnda
