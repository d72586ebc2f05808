#include "rnda/jack.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "rnda/parallel.hpp"

namespace rnda {

Spectrum::Spectrum(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("spectrum entries must be finite");
  }
  std::sort(values_.begin(), values_.end(), std::greater<double>());
}

double Spectrum::sum() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s;
}

double Spectrum::max_abs() const {
  double s = 0.0;
  for (double v : values_) s = std::max(s, std::abs(v));
  return s;
}

Spectrum Spectrum::scaled(double c) const {
  std::vector<double> out(values_);
  for (double& v : out) v *= c;
  return Spectrum(std::move(out));
}

namespace {

// The horizontal strip coefficient multiplies, over the squares of nu, the
// upper hook l + alpha (a + 1) in columns where nu and the other partition
// have equal height and the lower hook l + 1 + alpha a elsewhere.  Which of
// the two applies is decided per column, and the columns where a horizontal
// strip changes the height form one contiguous range per row, so with
// column-wise prefix sums every strip evaluation costs O(rows):
//   sum = all_upper - sum_rows (prefix_diff[strip end] - prefix_diff[start]).
struct HookSums {
  double all_upper = 0.0;            // every column height matches
  std::vector<double> prefix_diff;   // prefix sums of log upper - log lower
  double log_norm = 0.0;             // log j_nu, product of both hooks
};

HookSums hook_sums(const std::vector<int>& parts, const std::vector<int>& conj,
                   double alpha) {
  const size_t cols = conj.size();
  std::vector<double> upper(cols, 0.0);
  std::vector<double> lower(cols, 0.0);
  for (size_t i = 0; i < parts.size(); ++i) {
    for (int j = 0; j < parts[i]; ++j) {
      const int arm = parts[i] - j - 1;
      const int leg = conj[static_cast<size_t>(j)] - static_cast<int>(i) - 1;
      upper[static_cast<size_t>(j)] += std::log(leg + alpha * (arm + 1));
      lower[static_cast<size_t>(j)] += std::log(leg + 1 + alpha * arm);
    }
  }
  HookSums h;
  h.prefix_diff.assign(cols + 1, 0.0);
  for (size_t j = 0; j < cols; ++j) {
    h.all_upper += upper[j];
    h.log_norm += upper[j] + lower[j];
    h.prefix_diff[j + 1] = h.prefix_diff[j] + (upper[j] - lower[j]);
  }
  return h;
}

struct Pred {
  int mu;
  int strip;
  double coeff;
};

// Everything about the recursion that does not depend on the spectrum:
// partition ids, weight layers, and per-partition predecessor lists under
// horizontal strip removal with coefficients already carried to the C
// normalization. Shared between tables through a cache keyed by
// (m, max_weight, beta), since rebuilding it dominates table construction.
struct Skeleton {
  int m = 0;
  int max_weight = 0;
  std::vector<Partition> partitions;
  std::map<Partition, int> index;
  std::vector<std::vector<int>> layers;
  std::vector<std::vector<Pred>> preds;

  void build(AlgebraDim dim) {
    const double alpha = dim.alpha();
    const int count = static_cast<int>(partitions.size());
    const int threads = worker_count();

    std::vector<HookSums> hooks(static_cast<size_t>(count));
    std::vector<double> lfact(static_cast<size_t>(max_weight) + 1, 0.0);
    for (int k = 1; k <= max_weight; ++k) {
      lfact[static_cast<size_t>(k)] =
          lfact[static_cast<size_t>(k) - 1] + std::log(static_cast<double>(k));
    }
    for (int id = 0; id < count; ++id) {
      const size_t i = static_cast<size_t>(id);
      hooks[i] = hook_sums(partitions[i].parts(), partitions[i].conjugate(), alpha);
    }

    preds.resize(static_cast<size_t>(count));
    const double lalpha = std::log(alpha);

#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
    for (int id = 0; id < count; ++id) {
      const Partition& kappa = partitions[static_cast<size_t>(id)];
      const HookSums& hk = hooks[static_cast<size_t>(id)];
      std::vector<int> mu(static_cast<size_t>(kappa.length()));
      std::vector<Pred>& out = preds[static_cast<size_t>(id)];

      // Locate mu without building a Partition: its layer is sorted in
      // decreasing lexicographic order, so a binary search over the raw part
      // vector avoids a map lookup and two allocations per edge.
      auto locate = [&](int weight) {
        const auto& layer = layers[static_cast<size_t>(weight)];
        size_t lo_i = 0;
        size_t hi_i = layer.size();
        while (lo_i < hi_i) {
          const size_t probe = (lo_i + hi_i) / 2;
          const auto& cand = partitions[static_cast<size_t>(layer[probe])].parts();
          const size_t n = std::max(cand.size(), mu.size());
          bool earlier = false;
          for (size_t r = 0; r < n; ++r) {
            const int a = r < cand.size() ? cand[r] : 0;
            const int b = r < mu.size() ? mu[r] : 0;
            if (a != b) {
              earlier = a > b;
              break;
            }
          }
          if (earlier) {
            lo_i = probe + 1;
          } else {
            hi_i = probe;
          }
        }
        return layer[lo_i];
      };

      std::function<void(int, int)> descend = [&](int row, int weight) {
        if (row == kappa.length()) {
          const int mid = locate(weight);
          const HookSums& hm = hooks[static_cast<size_t>(mid)];
          const int mu0 = kappa.length() > 0 ? mu[0] : 0;
          double lg = hk.all_upper - hm.all_upper;
          for (int r = 0; r < kappa.length(); ++r) {
            const int hi = kappa.part(r);
            const int lo = mu[static_cast<size_t>(r)];
            lg -= hk.prefix_diff[static_cast<size_t>(hi)] -
                  hk.prefix_diff[static_cast<size_t>(lo)];
            lg += hm.prefix_diff[static_cast<size_t>(std::min(hi, mu0))] -
                  hm.prefix_diff[static_cast<size_t>(std::min(lo, mu0))];
          }
          const int strip = kappa.weight() - weight;
          lg += strip * lalpha;
          lg += lfact[static_cast<size_t>(kappa.weight())] -
                lfact[static_cast<size_t>(weight)];
          lg += hm.log_norm - hk.log_norm;
          out.push_back({mid, strip, std::exp(lg)});
          return;
        }
        const int hi = kappa.part(row);
        const int lo = kappa.part(row + 1);
        for (int v = hi; v >= lo; --v) {
          mu[static_cast<size_t>(row)] = v;
          descend(row + 1, weight + v);
        }
      };
      descend(0, 0);
    }
  }
};

using SkeletonKey = std::tuple<int, int, int>;  // m, max_weight, beta

std::shared_ptr<const Skeleton> skeleton_for(int m, int max_weight, AlgebraDim dim) {
  static std::mutex mutex;
  static std::map<SkeletonKey, std::shared_ptr<const Skeleton>> cache;

  const SkeletonKey key{m, max_weight, dim.beta()};
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }

  auto skel = std::make_shared<Skeleton>();
  skel->m = m;
  skel->max_weight = max_weight;
  skel->layers.resize(static_cast<size_t>(max_weight) + 1);
  for (int k = 0; k <= max_weight; ++k) {
    for (auto& p : enumerate_partitions(k, std::max(m, 1))) {
      if (p.length() > m) continue;  // m == 0 keeps only the empty partition
      int id = static_cast<int>(skel->partitions.size());
      skel->layers[static_cast<size_t>(k)].push_back(id);
      skel->index.emplace(p, id);
      skel->partitions.push_back(std::move(p));
    }
  }
  skel->build(dim);

  std::lock_guard<std::mutex> lock(mutex);
  auto [it, inserted] = cache.emplace(key, std::move(skel));
  return it->second;
}

}  // namespace

struct JackTable::Impl {
  std::shared_ptr<const Skeleton> skel;
};

JackTable::JackTable(const Spectrum& x, AlgebraDim dim, int max_weight, Fill fill)
    : dim_(dim), m_(x.size()), max_weight_(max_weight) {
  if (max_weight < 0) throw std::invalid_argument("max_weight must be non-negative");
  scale_ = x.max_abs();
  if (scale_ == 0.0) scale_ = 1.0;
  x_scaled_.resize(static_cast<size_t>(m_));
  for (int i = 0; i < m_; ++i) x_scaled_[static_cast<size_t>(i)] = x[i] / scale_;
  impl_ = std::make_shared<Impl>();
  impl_->skel = skeleton_for(m_, max_weight_, dim_);
  fill_values(fill);
}

void JackTable::fill_values(Fill fill) {
  const Skeleton& skel = *impl_->skel;
  const int count = static_cast<int>(skel.partitions.size());
  const int threads = worker_count();
  const bool parallel = fill == Fill::parallel;

  // One pass per variable: values over x_1 .. x_t from values over x_1 .. x_{t-1}.
  std::vector<double> cur(static_cast<size_t>(count), 0.0);
  std::vector<double> next(static_cast<size_t>(count), 0.0);
  cur[0] = 1.0;  // empty partition
  std::vector<double> pw(static_cast<size_t>(max_weight_) + 1, 1.0);
  for (int t = 0; t < m_; ++t) {
    const double xt = x_scaled_[static_cast<size_t>(t)];
    if (xt == 0.0) continue;  // adding a zero variable changes nothing
    for (int s = 1; s <= max_weight_; ++s) {
      pw[static_cast<size_t>(s)] = pw[static_cast<size_t>(s) - 1] * xt;
    }

#pragma omp parallel for schedule(static) num_threads(threads) if (parallel)
    for (int id = 0; id < count; ++id) {
      double acc = 0.0;
      for (const Pred& p : skel.preds[static_cast<size_t>(id)]) {
        acc += cur[static_cast<size_t>(p.mu)] * p.coeff * pw[static_cast<size_t>(p.strip)];
      }
      next[static_cast<size_t>(id)] = acc;
    }
    std::swap(cur, next);
  }
  values_ = std::move(cur);
}

double JackTable::value(const Partition& kappa) const {
  return scaled_value(kappa) * std::pow(scale_, kappa.weight());
}

double JackTable::scaled_value(const Partition& kappa) const {
  const auto& index = impl_->skel->index;
  auto it = index.find(kappa);
  if (it == index.end()) {
    if (kappa.length() > m_) return 0.0;
    throw std::out_of_range("partition weight exceeds table max_weight");
  }
  return values_[static_cast<size_t>(it->second)];
}

const std::vector<int>& JackTable::layer_ids(int k) const {
  if (k < 0 || k > max_weight_) throw std::out_of_range("layer weight out of range");
  return impl_->skel->layers[static_cast<size_t>(k)];
}

const Partition& JackTable::partition_of(int id) const {
  return impl_->skel->partitions[static_cast<size_t>(id)];
}

double jack_c(const Partition& kappa, const Spectrum& x, AlgebraDim dim) {
  if (kappa.length() > x.size()) return 0.0;
  JackTable table(x, dim, kappa.weight());
  return table.value(kappa);
}

std::vector<std::pair<Partition, double>> jack_layer(int weight, const Spectrum& x,
                                                     AlgebraDim dim) {
  JackTable table(x, dim, weight);
  std::vector<std::pair<Partition, double>> out;
  const double factor = std::pow(table.scale(), weight);
  for (int id : table.layer_ids(weight)) {
    out.emplace_back(table.partition_of(id), table.scaled_value_by_id(id) * factor);
  }
  return out;
}

}  // namespace rnda
