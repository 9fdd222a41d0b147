#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace setbm {

enum class Exec { Serial, Parallel };

// Worker count for the parallel kernels: OpenMP's maximum, capped by the
// SETBM_THREADS environment variable when set.
int worker_count();

// All parallel kernels iterate over independent indices (one RNG stream per
// index), so the serial reference and the OpenMP kernel produce identical
// output arrays. Reductions over those arrays happen serially afterwards.
template <typename Fn>
void parallel_for(std::int64_t n, Exec exec, Fn&& fn) {
    if (exec == Exec::Serial) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
#ifdef _OPENMP
    const int workers = worker_count();
#pragma omp parallel for schedule(static) num_threads(workers)
    for (std::int64_t i = 0; i < n; ++i) fn(i);
#else
    for (std::int64_t i = 0; i < n; ++i) fn(i);
#endif
}

}  // namespace setbm
