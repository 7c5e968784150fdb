#include "lfa/parallel.hpp"

#include <atomic>

namespace lfa::par {

namespace {
std::atomic<bool> g_enabled{true};
}

bool enabled() noexcept { return g_enabled.load(std::memory_order_relaxed); }

void set_enabled(bool on) noexcept { g_enabled.store(on, std::memory_order_relaxed); }

int max_threads() noexcept {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace lfa::par
