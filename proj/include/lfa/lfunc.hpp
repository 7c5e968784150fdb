#pragma once

#include <complex>
#include <optional>

#include "lfa/characters.hpp"
#include "lfa/errors.hpp"

namespace lfa {

enum class EvalMethod { hurwitz_direct, rane_afe, lprime_afe };

struct LEvaluation {
    cplx s;
    cplx value;
    std::optional<cplx> derivative;
    EvalMethod method = EvalMethod::hurwitz_direct;
    double est_error = 0.0;
};

// Reference evaluator: L(s,chi) = q^(-s) sum_r chi(r) zeta(s, r/q), with the
// Hurwitz pole parts cancelled explicitly near s = 1 for nonprincipal chi.
// deriv = 1 applies the product rule with the zeta s-derivative.
cplx l_value(cplx s, const DirichletCharacter& chi, int deriv = 0);

// value and derivative from one pass over the Hurwitz decomposition
std::pair<cplx, cplx> l_value_with_deriv(cplx s, const DirichletCharacter& chi);

struct EmParams;
std::pair<cplx, cplx> l_value_with_deriv(cplx s, const DirichletCharacter& chi,
                                          const EmParams& params);

// Delta(s,chi) = tau/(i^nu sqrt(pi)) (pi/q)^s Gamma((1-s+nu)/2)/Gamma((s+nu)/2),
// the ratio factor in L(s,chi) = Delta(s,chi) L(1-s, conj chi).
cplx delta_factor(cplx s, const DirichletCharacter& chi);

// same factor through the reflection/duplication product
// i tau chi(-1) (2pi)^(s-1) q^(-s) Gamma(1-s) e^(-i pi s/2) (1 - chi(-1) e^(i pi s));
// a second code path kept to pin the tau / parity / branch conventions.
cplx delta_factor_product_form(cplx s, const DirichletCharacter& chi);

// Delta'/Delta = log(pi/q) - psi((1-s+nu)/2)/2 - psi((s+nu)/2)/2
cplx delta_log_deriv(cplx s, const DirichletCharacter& chi);

// completed xi(s,chi) = (q/pi)^((s+nu)/2) Gamma((s+nu)/2) L(s,chi)
cplx xi_completed(cplx s, const DirichletCharacter& chi);
cplx xi_completed_log(cplx s, const DirichletCharacter& chi);

// relative residual of xi(s,chi) = tau/(i^nu sqrt q) xi(1-s, conj chi),
// evaluated in log space so large |t| cannot overflow
double functional_equation_residual(cplx s, const DirichletCharacter& chi);

// Rane's approximate functional equation: two sums of length sqrt(qt/2pi).
// Valid for 0 <= sigma <= 1, t >= 10, primitive chi.
cplx l_afe(cplx s, const DirichletCharacter& chi);

// approximate functional equation for L': three sums of length sqrt(qt/2pi)
cplx lprime_afe(cplx s, const DirichletCharacter& chi);

// L'(s,chi) / (L(s,chi) - a); raises near_singularity_error when
// |L - a| < 1e-13 (the point is effectively an a-point)
cplx log_deriv_shifted(cplx s, const DirichletCharacter& chi, cplx a);

// evaluation wrapper carrying the method's error envelope
LEvaluation evaluate(cplx s, const DirichletCharacter& chi, int deriv, EvalMethod method);

}  // namespace lfa
