#include "rlab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace rlab {

namespace {

std::atomic<int> g_threads{0};  // 0 = unset

int parse_env_threads() {
    if (const char* env = std::getenv("RASHOMON_LAB_THREADS")) {
        try {
            int n = std::stoi(std::string(env));
            if (n > 0) return n;
        } catch (...) {
        }
    }
    return 0;
}

}  // namespace

void set_threads(int n) { g_threads.store(n > 0 ? n : 0); }

int thread_count() {
    int n = parse_env_threads();
    if (n > 0) return n;
    n = g_threads.load();
    if (n > 0) return n;
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

bool parallelism_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

}  // namespace rlab
