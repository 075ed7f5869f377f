#include "dlab/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dlab::parallel {

static int read_thread_budget() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
#else
    int n = 1;
#endif
    if (const char* env = std::getenv("DLAB_THREADS")) {
        try {
            int requested = std::stoi(env);
            if (requested >= 1) n = requested;
        } catch (...) {
            // ignore malformed values, keep the OpenMP default
        }
    }
    return n;
}

int max_threads() {
    static const int cached = read_thread_budget();
    return cached;
}

} // namespace dlab::parallel
