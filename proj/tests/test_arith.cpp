#include <cmath>
#include <complex>
#include <numeric>

#include "doctest.h"
#include "lfa/arith.hpp"
#include "lfa/characters.hpp"

using lfa::FactorSieve;

namespace {

// brute-force oracle: enumerate all ordered factorizations X = m*n
double conv_oracle(const FactorSieve& sv, std::int64_t X) {
    double sum = 0.0;
    for (std::int64_t n = 1; n <= X; ++n) {
        if (X % n != 0) continue;
        sum += sv.von_mangoldt(n) * std::log(static_cast<double>(X / n));
    }
    return sum;
}

}  // namespace

TEST_CASE("von Mangoldt basics") {
    FactorSieve sv(1000);
    CHECK(sv.von_mangoldt(1) == 0.0);
    CHECK(sv.von_mangoldt(9) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
    CHECK(sv.von_mangoldt(12) == 0.0);
    CHECK(sv.von_mangoldt(2) == doctest::Approx(std::log(2.0)));
    CHECK(sv.von_mangoldt(128) == doctest::Approx(std::log(2.0)));
    CHECK_THROWS_AS(sv.von_mangoldt(0), lfa::domain_error);
    CHECK_THROWS_AS(sv.von_mangoldt(1001), lfa::domain_error);
}

TEST_CASE("divisor sum of Lambda equals log n") {
    FactorSieve sv(10000);
    for (std::int64_t n = 1; n <= 10000; ++n) {
        double sum = 0.0;
        std::int64_t m = n;
        // sum Lambda over divisors = sum over prime powers dividing n
        for (const auto& [p, e] : sv.factor(n)) {
            sum += e * std::log(static_cast<double>(p));
        }
        (void)m;
        CHECK(std::abs(sum - std::log(static_cast<double>(n))) < 1e-12);
    }
}

TEST_CASE("lambda_log_conv against enumeration oracle") {
    FactorSieve sv(5000);
    CHECK(sv.lambda_log_conv(1) == 0.0);

    const double log2 = std::log(2.0), log3 = std::log(3.0);
    CHECK(sv.lambda_log_conv(4) == doctest::Approx(log2 * log2).epsilon(1e-13));
    CHECK(sv.lambda_log_conv(4) == doctest::Approx(0.4804530139182014).epsilon(1e-13));
    // only (2,3) and (3,2) contribute: Lambda(3) log 2 + Lambda(2) log 3
    CHECK(sv.lambda_log_conv(6) == doctest::Approx(2.0 * log2 * log3).epsilon(1e-13));
    CHECK(sv.lambda_log_conv(6) == doctest::Approx(1.523000020837618).epsilon(1e-12));

    for (std::int64_t X : {1, 2, 3, 4, 6, 12, 30, 60, 360, 1024, 3600}) {
        CHECK(sv.lambda_log_conv(X) == doctest::Approx(conv_oracle(sv, X)).epsilon(1e-12));
    }

    // primes: only (p,1),(1,p) factorizations, both contribute zero
    for (std::int64_t p : {2, 3, 5, 7, 11, 101, 997}) {
        CHECK(sv.lambda_log_conv(p) == 0.0);
    }
}

TEST_CASE("twisted convolution matches conj(chi(k)) * plain convolution") {
    FactorSieve sv(10000);
    const auto chi3 = lfa::DirichletCharacter(3, 1);
    const auto chi4 = lfa::DirichletCharacter(4, 1);
    const auto chi5 = lfa::enumerate_characters(5);

    CHECK(sv.twisted_lambda_log_conv(1, chi3) == std::complex<double>{0.0, 0.0});
    CHECK(std::abs(sv.twisted_lambda_log_conv(4, chi3) -
                   std::complex<double>(0.4804530139182014, 0.0)) < 1e-12);
    CHECK(sv.twisted_lambda_log_conv(2, chi4) == std::complex<double>{0.0, 0.0});

    for (const auto& chi : {chi3, chi4, chi5[1], chi5[2]}) {
        for (std::int64_t k = 1; k <= 10000; ++k) {
            if (std::gcd(k, chi.modulus()) != 1) continue;
            const auto lhs = sv.twisted_lambda_log_conv(k, chi);
            const auto rhs = std::conj(chi(k)) * sv.lambda_log_conv(k);
            CHECK(std::abs(lhs - rhs) < 1e-12);
        }
    }
}
