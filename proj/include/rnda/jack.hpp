#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "rnda/special.hpp"

namespace rnda {

/// Eigenvalues stored in non-increasing order. Construction sorts; entries
/// must be finite.
class Spectrum {
 public:
  Spectrum() = default;
  explicit Spectrum(std::vector<double> values);

  [[nodiscard]] int size() const { return static_cast<int>(values_.size()); }
  [[nodiscard]] double operator[](int i) const { return values_[static_cast<size_t>(i)]; }
  [[nodiscard]] const std::vector<double>& values() const { return values_; }
  [[nodiscard]] double sum() const;
  [[nodiscard]] double max_abs() const;

  /// Entrywise scaling; the result is re-sorted when c < 0.
  [[nodiscard]] Spectrum scaled(double c) const;

 private:
  std::vector<double> values_;
};

/// Cache of Jack polynomial values C_kappa^beta(x) for every partition kappa
/// of weight at most max_weight with at most size(x) parts.
///
/// To keep entries representable at high weight, the table internally stores
/// values at the rescaled spectrum x / scale() with scale() = max_i |x_i|;
/// series evaluators fold the factor scale()^|kappa| into their layer
/// prefactors, and value() reapplies it for direct queries.
class JackTable {
 public:
  enum class Fill { serial, parallel };

  JackTable(const Spectrum& x, AlgebraDim dim, int max_weight,
            Fill fill = Fill::parallel);

  /// C_kappa^beta(x). Zero when kappa has more parts than x has entries.
  /// Throws std::out_of_range past max_weight.
  [[nodiscard]] double value(const Partition& kappa) const;

  /// C_kappa^beta(x / scale()); pair with scale()^|kappa|.
  [[nodiscard]] double scaled_value(const Partition& kappa) const;

  [[nodiscard]] double scale() const { return scale_; }
  [[nodiscard]] int max_weight() const { return max_weight_; }
  [[nodiscard]] int dim() const { return m_; }
  [[nodiscard]] AlgebraDim algebra() const { return dim_; }

  /// Partitions of weight k with at most dim() parts, enumeration order.
  [[nodiscard]] const std::vector<int>& layer_ids(int k) const;
  [[nodiscard]] const Partition& partition_of(int id) const;
  [[nodiscard]] double scaled_value_by_id(int id) const { return values_[static_cast<size_t>(id)]; }

 private:
  struct Impl;

  void fill_values(Fill fill);

  AlgebraDim dim_;
  int m_;
  int max_weight_;
  double scale_;
  std::vector<double> x_scaled_;
  std::shared_ptr<Impl> impl_;    // shared combinatorial skeleton, spectrum independent
  std::vector<double> values_;    // id -> C at the rescaled spectrum
};

/// Single Jack polynomial value C_kappa^beta(x).
[[nodiscard]] double jack_c(const Partition& kappa, const Spectrum& x, AlgebraDim dim);

/// All values on one weight layer, keyed in enumeration order.
[[nodiscard]] std::vector<std::pair<Partition, double>> jack_layer(int weight,
                                                                   const Spectrum& x,
                                                                   AlgebraDim dim);

}  // namespace rnda
