#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "lfa/errors.hpp"

namespace lfa {

class DirichletCharacter;

// Smallest-prime-factor sieve backing the von Mangoldt function and the
// divisor convolutions.  Built once, immutable afterwards; all queries are
// read-only and safe for concurrent use.
class FactorSieve {
  public:
    explicit FactorSieve(std::int64_t limit = 1'000'000);

    std::int64_t limit() const noexcept { return limit_; }

    // Lambda(n): log p when n = p^k, 0 otherwise.
    double von_mangoldt(std::int64_t n) const;

    // sum over ordered factorizations X = m*n of Lambda(n) * log(m)
    double lambda_log_conv(std::int64_t X) const;

    // Same sum with conj(chi) twists on both factors.  Equals
    // conj(chi(k)) * lambda_log_conv(k) by complete multiplicativity; kept
    // as an independent divisor enumeration so the identity is testable.
    std::complex<double> twisted_lambda_log_conv(std::int64_t k,
                                                 const DirichletCharacter& chi) const;

    std::int32_t smallest_prime_factor(std::int64_t n) const;

    // prime factorization as (p, exponent) pairs
    std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n) const;

    // ascending list of primes up to the sieve limit
    std::vector<std::int64_t> primes() const;

  private:
    void check_range(std::int64_t n) const;

    std::int64_t limit_;
    std::vector<std::int32_t> spf_;
};

}  // namespace lfa
