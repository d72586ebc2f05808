// Compares the serial reference kernels against the OpenMP ones: Jack table
// fills and the sampler. Timing tool only; results go to standard output.
#include <chrono>
#include <cstdio>
#include <vector>

#include "rnda/jack.hpp"
#include "rnda/parallel.hpp"
#include "rnda/sampling.hpp"

namespace {

template <typename Fn>
double best_seconds(int reps, const Fn& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const double s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (s < best) best = s;
  }
  return best;
}

rnda::Spectrum bench_spectrum(int m) {
  std::vector<double> x(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) x[static_cast<size_t>(i)] = 0.4 + 0.3 * i;
  return rnda::Spectrum(std::move(x));
}

}  // namespace

int main() {
  std::printf("workers: %d\n\n", rnda::worker_count());
  std::printf("%-28s %10s %10s %8s\n", "kernel", "serial ms", "openmp ms", "speedup");

  const rnda::AlgebraDim dim(2);
  for (const auto [m, weight] : {std::pair{2, 60}, {3, 40}, {4, 28}}) {
    const rnda::Spectrum x = bench_spectrum(m);
    volatile double sink = 0.0;
    const double serial = best_seconds(3, [&] {
      const rnda::JackTable t(x, dim, weight, rnda::JackTable::Fill::serial);
      sink = t.scaled_value_by_id(0);
    });
    const double parallel = best_seconds(3, [&] {
      const rnda::JackTable t(x, dim, weight, rnda::JackTable::Fill::parallel);
      sink = t.scaled_value_by_id(0);
    });
    char label[64];
    std::snprintf(label, sizeof label, "jack table m=%d weight=%d", m, weight);
    std::printf("%-28s %10.2f %10.2f %7.2fx\n", label, serial * 1e3, parallel * 1e3,
                serial / parallel);
  }

  const rnda::WishartParams p(5.0, rnda::HermitianMatrix::diagonal({1.0, 0.7, 0.4}, dim));
  const rnda::WishartSampler sampler(p);
  const long count = 20000;
  const double serial = best_seconds(3, [&] {
    (void)sampler.spectra(count, 1, rnda::Execution::serial);
  });
  const double parallel = best_seconds(3, [&] {
    (void)sampler.spectra(count, 1, rnda::Execution::parallel);
  });
  char label[64];
  std::snprintf(label, sizeof label, "sampler m=3 count=%ld", count);
  std::printf("%-28s %10.2f %10.2f %7.2fx\n", label, serial * 1e3, parallel * 1e3,
              serial / parallel);
  return 0;
}
