#include "embens/parallel.hpp"

#include <atomic>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace embens {

namespace {

int env_threads() {
    const char* v = std::getenv("EMBENS_THREADS");
    if (v == nullptr) return 0;
    char* end = nullptr;
    long n = std::strtol(v, &end, 10);
    if (end == v || n < 0) return 0;
    return static_cast<int>(n);
}

std::atomic<int>& override_slot() {
    static std::atomic<int> slot{-1}; // -1 = no override
    return slot;
}

} // namespace

int max_threads() {
    int n = override_slot().load(std::memory_order_relaxed);
    if (n < 0) n = env_threads();
    if (n > 0) return n;
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_max_threads(int n) {
    override_slot().store(n < 0 ? 0 : n, std::memory_order_relaxed);
}

} // namespace embens
