#pragma once

#include <cstddef>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rlab {

// Thread-count resolution order: RASHOMON_LAB_THREADS env, then set_threads(),
// then the OpenMP default. Returns 1 when built without OpenMP.
int thread_count();
void set_threads(int n);
bool parallelism_enabled();

// Static-schedule parallel loop. Bodies must write only to slots indexed by i
// so results are identical for any thread count.
template <class F>
void parallel_for(std::size_t n, F&& body) {
#ifdef _OPENMP
    const int nt = thread_count();
    if (nt > 1 && n > 1) {
#pragma omp parallel for schedule(static) num_threads(nt)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
            body(static_cast<std::size_t>(i));
        return;
    }
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace rlab
