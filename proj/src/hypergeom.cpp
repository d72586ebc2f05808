#include "rnda/hypergeom.hpp"

#include <cmath>
#include <stdexcept>

namespace rnda {

namespace {

// Compensated (Neumaier) accumulator; the correction matters when layers of
// alternating sign nearly cancel.
struct Accumulator {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }

  [[nodiscard]] double total() const { return sum + carry; }
};

}  // namespace

HypResult partition_series(const JackTable& table, const SeriesControl& ctrl,
                           const std::function<double(int)>& layer_prefactor,
                           const std::function<double(int)>& term_weight) {
  const int max_degree = std::min(ctrl.max_degree, table.max_weight());
  HypResult res;
  Accumulator total;
  auto& mags = res.report.layer_magnitudes;
  mags.reserve(static_cast<size_t>(max_degree) + 1);

  for (int k = 0; k <= max_degree; ++k) {
    const double pref = layer_prefactor(k);
    Accumulator layer;
    for (int id : table.layer_ids(k)) {
      layer.add(term_weight(id) * table.scaled_value_by_id(id));
    }
    const double contribution = pref * layer.total();
    total.add(contribution);
    mags.push_back(std::abs(contribution));
    res.report.degrees_used = k;

    if (!std::isfinite(total.total())) {
      res.report.note = "series overflowed at degree " + std::to_string(k);
      break;
    }
    if (k >= 1) {
      const double ref = std::abs(total.total());
      if (mags[static_cast<size_t>(k)] <= ctrl.rel_tol * ref &&
          mags[static_cast<size_t>(k) - 1] <= ctrl.rel_tol * ref) {
        res.report.converged = true;
        break;
      }
    }
  }

  res.value = total.total();
  const double ref = std::abs(res.value);
  if (ref > 0.0 && !mags.empty()) {
    res.report.last_layer_ratio = mags.back() / ref;
    if (mags.size() > 1) res.report.prev_layer_ratio = mags[mags.size() - 2] / ref;
  }
  if (!res.report.converged && res.report.note.empty()) {
    res.report.note = "layer contributions still above rel_tol at max degree " +
                      std::to_string(max_degree) + "; raise max_degree";
  }
  return res;
}

double gen_pochhammer_ratio(const HypParams& params, const Partition& kappa,
                            AlgebraDim dim) {
  const double half_beta = dim.beta() / 2.0;
  double r = 1.0;
  for (int i = 0; i < kappa.length(); ++i) {
    const double off = -i * half_beta;
    for (int j = 0; j < kappa.part(i); ++j) {
      for (double a : params.upper) r *= a + off + j;
      for (double b : params.lower) {
        const double f = b + off + j;
        if (f == 0.0) {
          throw std::invalid_argument(
              "lower hypergeometric parameter " + std::to_string(b) +
              " hits a Pochhammer zero in row " + std::to_string(i + 1));
        }
        r /= f;
      }
    }
  }
  return r;
}

namespace {

void check_radius(const HypParams& params, const Spectrum& x) {
  if (params.upper.size() > params.lower.size() + 1) {
    throw std::invalid_argument(
        "hypergeometric series with more than q+1 upper parameters diverges");
  }
  if (params.upper.size() == params.lower.size() + 1 && x.max_abs() >= 1.0) {
    throw std::domain_error(
        "p = q+1 hypergeometric series requires spectral radius below one, got " +
        std::to_string(x.max_abs()));
  }
}

}  // namespace

HypResult hyp_pfq(const HypParams& params, const JackTable& table,
                  const SeriesControl& ctrl, double extra_scale) {
  const double s = table.scale() * extra_scale;
  double pref = 1.0;
  auto layer_prefactor = [&pref, s](int k) mutable -> double {
    if (k > 0) pref *= s / k;
    return pref;
  };
  auto term_weight = [&params, &table](int id) {
    return gen_pochhammer_ratio(params, table.partition_of(id), table.algebra());
  };
  return partition_series(table, ctrl, layer_prefactor, term_weight);
}

HypResult hyp_pfq(const HypParams& params, const Spectrum& x, AlgebraDim dim,
                  const SeriesControl& ctrl) {
  check_radius(params, x);
  JackTable table(x, dim, ctrl.max_degree);
  return hyp_pfq(params, table, ctrl);
}

HypResult hyp_pfq_two(const HypParams& params, const JackTable& tx, const JackTable& ty,
                      const JackTable& ti, const SeriesControl& ctrl) {
  if (tx.dim() != ty.dim() || tx.dim() != ti.dim() ||
      tx.algebra().beta() != ty.algebra().beta() ||
      tx.algebra().beta() != ti.algebra().beta()) {
    throw std::invalid_argument("two-argument series requires tables over one algebra");
  }
  if (tx.max_weight() != ty.max_weight() || tx.max_weight() != ti.max_weight()) {
    throw std::invalid_argument("two-argument series requires tables of equal max_weight");
  }
  const AlgebraDim dim = tx.algebra();
  const double s = tx.scale() * ty.scale();
  double pref = 1.0;
  auto layer_prefactor = [&pref, s](int k) mutable -> double {
    if (k > 0) pref *= s / k;
    return pref;
  };
  auto term_weight = [&](int id) {
    return gen_pochhammer_ratio(params, tx.partition_of(id), dim) *
           ty.scaled_value_by_id(id) / ti.scaled_value_by_id(id);
  };
  return partition_series(tx, ctrl, layer_prefactor, term_weight);
}

HypResult hyp_pfq_two(const HypParams& params, const Spectrum& x, const Spectrum& y,
                      AlgebraDim dim, const SeriesControl& ctrl) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("two-argument series requires spectra of equal length");
  }
  check_radius(params, x);
  JackTable tx(x, dim, ctrl.max_degree);
  JackTable ty(y, dim, ctrl.max_degree);
  // Unit spectrum: scale is one, so stored values are C_kappa(I) itself.
  JackTable ti(Spectrum(std::vector<double>(static_cast<size_t>(x.size()), 1.0)), dim,
               ctrl.max_degree);
  return hyp_pfq_two(params, tx, ty, ti, ctrl);
}

}  // namespace rnda
