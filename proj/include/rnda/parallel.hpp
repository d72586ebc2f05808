#pragma once

namespace rnda {

/// Number of worker threads for parallel kernels: the RNDA_THREADS
/// environment variable when set (clamped to at least 1), otherwise the
/// OpenMP default. Results never depend on this value, only wall time does.
[[nodiscard]] int worker_count();

}  // namespace rnda
