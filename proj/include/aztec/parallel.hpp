#pragma once

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace aztec {

enum class RunMode { Serial, Parallel };

// Parallelism cap: AZTEC_THREADS (if set) bounds the OpenMP thread count.
inline int max_threads() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
#else
    int n = 1;
#endif
    if (const char* env = std::getenv("AZTEC_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1 && cap < n) n = cap;
    }
    return n;
}

}  // namespace aztec
