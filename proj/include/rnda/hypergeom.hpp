#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rnda/jack.hpp"
#include "rnda/special.hpp"

namespace rnda {

/// Truncation policy for partition series: sum whole weight layers in
/// enumeration order and stop once two consecutive layers each contribute
/// less than rel_tol of the running total in magnitude.
struct SeriesControl {
  int max_degree = 40;
  double rel_tol = 1e-12;
};

struct ConvergenceReport {
  bool converged = false;
  int degrees_used = 0;
  std::vector<double> layer_magnitudes;  // |contribution| of each summed layer
  double last_layer_ratio = 0.0;         // relative to the final partial sum
  double prev_layer_ratio = 0.0;
  std::string note;
};

struct HypResult {
  double value = 0.0;
  ConvergenceReport report;
};

/// Parameter lists of a hypergeometric function of matrix argument.
struct HypParams {
  std::vector<double> upper;
  std::vector<double> lower;
};

/// Generic partition series
///   sum_k layer_prefactor(k) * sum_{|kappa| = k} term_weight(id) * C_kappa(x / s),
/// where s is the table scale. Prefactors are queried once per layer in
/// increasing order, so callers may fold s^k and 1/k! in incrementally.
/// Never throws on slow convergence; the report carries the diagnosis.
[[nodiscard]] HypResult partition_series(const JackTable& table, const SeriesControl& ctrl,
                                         const std::function<double(int)>& layer_prefactor,
                                         const std::function<double(int)>& term_weight);

/// Ratio prod_i [a_i]_kappa / prod_j [b_j]_kappa evaluated factor by factor.
/// Throws std::invalid_argument when a denominator factor is exactly zero.
[[nodiscard]] double gen_pochhammer_ratio(const HypParams& params, const Partition& kappa,
                                          AlgebraDim dim);

/// Hypergeometric function pFq of one matrix argument, reduced to its
/// spectrum. Requires p <= q + 1; for p = q + 1 the spectral radius must be
/// below one, otherwise the series diverges and std::domain_error is thrown.
[[nodiscard]] HypResult hyp_pfq(const HypParams& params, const Spectrum& x, AlgebraDim dim,
                                const SeriesControl& ctrl);

/// Same, reusing a prebuilt table (its max_weight caps the degree). The
/// series is evaluated at extra_scale times the table's spectrum, so one
/// table can serve a whole grid of proportional arguments.
[[nodiscard]] HypResult hyp_pfq(const HypParams& params, const JackTable& table,
                                const SeriesControl& ctrl, double extra_scale = 1.0);

/// Two-argument series with the C_kappa(X) C_kappa(Y) / C_kappa(I) kernel.
/// Spectra must have equal length.
[[nodiscard]] HypResult hyp_pfq_two(const HypParams& params, const Spectrum& x,
                                    const Spectrum& y, AlgebraDim dim,
                                    const SeriesControl& ctrl);

/// Same, reusing prebuilt tables: tx and ty at the two spectra, ti at the unit
/// spectrum of the same dimension. All three must share algebra, dimension and
/// max_weight. Lets grid evaluation rebuild only the table that changes.
[[nodiscard]] HypResult hyp_pfq_two(const HypParams& params, const JackTable& tx,
                                    const JackTable& ty, const JackTable& ti,
                                    const SeriesControl& ctrl);

}  // namespace rnda
