#include "impactum/parallel.hpp"

#include <atomic>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace impactum {

namespace {
std::atomic<int> g_override{0};
}

void set_thread_cap(int n) { g_override.store(n > 0 ? n : 0); }

int thread_cap() {
    if (int o = g_override.load(); o > 0) return o;
    if (const char* env = std::getenv("IMPACTUM_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
#ifdef _OPENMP
    int m = omp_get_max_threads();
    return m > 0 ? m : 1;
#else
    return 1;
#endif
}

int resolve_threads(int requested) { return requested > 0 ? requested : thread_cap(); }

} // namespace impactum
