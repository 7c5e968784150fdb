#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lfa::par {

// Global switch between the OpenMP kernels and the serial reference path.
// Both paths use the same fixed block decomposition and reduce the block
// partials in index order, so results are bit-identical regardless of
// thread count.  Tests assert that equality; `bench` compares timings.
bool enabled() noexcept;
void set_enabled(bool on) noexcept;
int  max_threads() noexcept;

inline constexpr std::size_t kBlock = 4096;

// Blocked sum of f(i) for i in [0, n).  f must be pure.
template <class F>
std::complex<double> blocked_sum(std::size_t n, F&& f, bool parallel) {
    if (n == 0) return {};
    const std::size_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<std::complex<double>> partial(nblocks);
#ifdef _OPENMP
    if (parallel && nblocks > 1) {
#pragma omp parallel for schedule(static)
        for (long long b = 0; b < static_cast<long long>(nblocks); ++b) {
            const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
            const std::size_t hi = lo + kBlock < n ? lo + kBlock : n;
            std::complex<double> acc{};
            for (std::size_t i = lo; i < hi; ++i) acc += f(i);
            partial[static_cast<std::size_t>(b)] = acc;
        }
    } else
#endif
    {
        (void)parallel;
        for (std::size_t b = 0; b < nblocks; ++b) {
            const std::size_t lo = b * kBlock;
            const std::size_t hi = lo + kBlock < n ? lo + kBlock : n;
            std::complex<double> acc{};
            for (std::size_t i = lo; i < hi; ++i) acc += f(i);
            partial[b] = acc;
        }
    }
    std::complex<double> total{};
    for (const auto& p : partial) total += p;
    return total;
}

template <class F>
std::complex<double> blocked_sum(std::size_t n, F&& f) {
    return blocked_sum(n, static_cast<F&&>(f), enabled());
}

}  // namespace lfa::par
