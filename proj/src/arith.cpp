#include "lfa/arith.hpp"

#include <cmath>
#include <string>

#include "lfa/characters.hpp"

namespace lfa {

FactorSieve::FactorSieve(std::int64_t limit) : limit_(limit) {
    if (limit < 1) throw domain_error("FactorSieve: limit must be >= 1");
    spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
    if (limit >= 1) spf_[1] = 1;
    for (std::int64_t i = 2; i <= limit; ++i) {
        if (spf_[i] == 0) {
            for (std::int64_t j = i; j <= limit; j += i)
                if (spf_[j] == 0) spf_[j] = static_cast<std::int32_t>(i);
        }
    }
}

void FactorSieve::check_range(std::int64_t n) const {
    if (n < 1 || n > limit_)
        throw domain_error("FactorSieve: argument " + std::to_string(n) +
                           " outside [1, " + std::to_string(limit_) + "]");
}

std::int32_t FactorSieve::smallest_prime_factor(std::int64_t n) const {
    check_range(n);
    return spf_[n];
}

double FactorSieve::von_mangoldt(std::int64_t n) const {
    check_range(n);
    if (n == 1) return 0.0;
    const std::int64_t p = spf_[n];
    std::int64_t m = n;
    while (m % p == 0) m /= p;
    return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

std::vector<std::pair<std::int64_t, int>> FactorSieve::factor(std::int64_t n) const {
    check_range(n);
    std::vector<std::pair<std::int64_t, int>> out;
    while (n > 1) {
        const std::int64_t p = spf_[n];
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.emplace_back(p, e);
    }
    return out;
}

std::vector<std::int64_t> FactorSieve::primes() const {
    std::vector<std::int64_t> out;
    for (std::int64_t n = 2; n <= limit_; ++n)
        if (spf_[n] == n) out.push_back(n);
    return out;
}

double FactorSieve::lambda_log_conv(std::int64_t X) const {
    check_range(X);
    // Lambda(n) is supported on prime-power divisors, so walk those directly.
    double sum = 0.0;
    for (const auto& [p, e] : factor(X)) {
        const double logp = std::log(static_cast<double>(p));
        std::int64_t pk = 1;
        for (int j = 1; j <= e; ++j) {
            pk *= p;
            sum += logp * std::log(static_cast<double>(X / pk));
        }
    }
    return sum;
}

std::complex<double> FactorSieve::twisted_lambda_log_conv(std::int64_t k,
                                                          const DirichletCharacter& chi) const {
    check_range(k);
    std::complex<double> sum = 0.0;
    for (const auto& [p, e] : factor(k)) {
        const double logp = std::log(static_cast<double>(p));
        std::int64_t pk = 1;
        for (int j = 1; j <= e; ++j) {
            pk *= p;
            const std::int64_t m = k / pk;
            sum += logp * std::conj(chi(pk)) * std::conj(chi(m)) *
                   std::log(static_cast<double>(m));
        }
    }
    return sum;
}

}  // namespace lfa
