#pragma once

#include <complex>
#include <utility>

#include "lfa/errors.hpp"

namespace lfa {

using cplx = std::complex<double>;

// Euler-Maclaurin controls for hurwitz_zeta.  direct_terms and
// bernoulli_terms of 0 mean "auto": N ~ max(10, 0.6 |Im s| + 10), M = 12,
// escalated at run time until the remainder bound meets target_abs_error.
struct EmParams {
    int direct_terms = 0;
    int bernoulli_terms = 0;
    double target_abs_error = 1e-12;
};

// principal branch, recurrence-shifted Stirling series
cplx log_gamma(cplx s);

// psi = Gamma'/Gamma
cplx digamma(cplx s);

// psi^(m), m in [0, 4]
cplx polygamma(int m, cplx s);

// zeta(s, alpha) for alpha in (0, 1], analytically continued; deriv = 1
// returns the first s-derivative.
cplx hurwitz_zeta(cplx s, double alpha, int deriv = 0, const EmParams& params = {});

// value and s-derivative in one Euler-Maclaurin pass
std::pair<cplx, cplx> hurwitz_zeta_with_deriv(cplx s, double alpha,
                                              const EmParams& params = {});

// pole-subtracted variant: (zeta(s,alpha) - 1/(s-1), zeta'(s,alpha) + 1/(s-1)^2),
// finite and stable through s = 1.  Used to evaluate nonprincipal L(s, chi)
// at and around s = 1, where the Hurwitz pole parts cancel over the character.
std::pair<cplx, cplx> hurwitz_zeta_reg_with_deriv(cplx s, double alpha,
                                                  const EmParams& params = {});

}  // namespace lfa
