// Serial-vs-OpenMP benchmark over the hot kernels: the character-twisted
// k-sums, the empirical sum of L'(rho) X^rho over located a-points, and a
// full a-point scan.  The parallel kernels use the same fixed block
// decomposition as the serial reference, so outputs must agree bit-for-bit.

#include <chrono>
#include <cmath>
#include <cstdio>

#include "lfa/apoints.hpp"
#include "lfa/arith.hpp"
#include "lfa/parallel.hpp"
#include "lfa/theorem.hpp"

using namespace lfa;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds(clock_type::time_point a, clock_type::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

template <class F>
double timed(F&& f, int reps) {
    const auto t0 = clock_type::now();
    for (int i = 0; i < reps; ++i) f();
    const auto t1 = clock_type::now();
    return seconds(t0, t1) / reps;
}

}  // namespace

int main() {
    std::printf("threads available: %d\n\n", par::max_threads());
    std::printf("%-34s %12s %12s %9s %s\n", "kernel", "serial [s]", "openmp [s]",
                "speedup", "bit-identical");

    const DirichletCharacter chi(4, 1);
    const FactorSieve sieve(2'000'000);

    {
        const std::int64_t K = 1'500'000;
        const double step = 2.0 * M_PI * 1.0 / 4.0;
        cplx rs, rp;
        const double ts = timed([&] { rs = twisted_ksum_serial(chi, K, 2, step); }, 3);
        par::set_enabled(true);
        const double tp = timed([&] { rp = twisted_ksum(chi, K, 2, step); }, 3);
        std::printf("%-34s %12.4f %12.4f %8.2fx %s\n", "twisted k-sum (K = 1.5e6)", ts, tp,
                    ts / tp, rs == rp ? "yes" : "NO");
    }
    {
        const std::int64_t K = 300'000;
        const double step = -2.0 * M_PI * 3.0 / 4.0;
        cplx rs, rp;
        const double ts =
            timed([&] { rs = twisted_ksum_serial(chi, K, -1, step, &sieve); }, 3);
        const double tp = timed([&] { rp = twisted_ksum(chi, K, -1, step, &sieve); }, 3);
        std::printf("%-34s %12.4f %12.4f %8.2fx %s\n", "twisted conv k-sum (K = 3e5)", ts,
                    tp, ts / tp, rs == rp ? "yes" : "NO");
    }
    {
        par::set_enabled(true);
        ApointScanner scanner(chi, cplx{0.0, 0.0});
        const double T = scanner.safe_height(200.0);
        const auto pts = nontrivial_points(scanner.scan_all(T));
        cplx rs, rp;
        const double ts = timed([&] { rs = empirical_sum_serial(pts, 2.0, chi); }, 3);
        const double tp = timed([&] { rp = empirical_sum(pts, 2.0, chi); }, 3);
        std::printf("%-34s %12.4f %12.4f %8.2fx %s\n", "empirical sum (T = 200)", ts, tp,
                    ts / tp, rs == rp ? "yes" : "NO");
    }
    {
        auto run_scan = [&](bool parallel) {
            par::set_enabled(parallel);
            ApointScanner scanner(chi, cplx{0.5, 0.0});
            const double T = scanner.safe_height(150.0);
            return scanner.scan_all(T).size();
        };
        std::size_t ns = 0, np = 0;
        const double ts = timed([&] { ns = run_scan(false); }, 1);
        const double tp = timed([&] { np = run_scan(true); }, 1);
        std::printf("%-34s %12.4f %12.4f %8.2fx %s\n", "a-point scan (a = 0.5, T = 150)",
                    ts, tp, ts / tp, ns == np ? "yes" : "NO");
        par::set_enabled(true);
    }
    return 0;
}
