#include "lfa/lfunc.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lfa/calibration.hpp"
#include "lfa/parallel.hpp"
#include "lfa/special.hpp"

namespace lfa {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

void require_primitive(const DirichletCharacter& chi, const char* who) {
    if (!chi.is_primitive())
        throw domain_error(std::string(who) + ": character (q=" +
                           std::to_string(chi.modulus()) + ", index=" +
                           std::to_string(chi.index()) + ") is not primitive");
}

// AFE sum length sqrt(q t / 2 pi)
std::int64_t afe_length(double q, double t) {
    return static_cast<std::int64_t>(std::floor(std::sqrt(q * t / (2.0 * kPi)) + 1e-12));
}

void check_afe_domain(cplx s, const char* who) {
    const double sigma = s.real(), t = s.imag();
    if (sigma < -1e-9 || sigma > 1.0 + 1e-9)
        throw math_domain_error(std::string(who) + ": sigma must lie in [0, 1]");
    if (t < 10.0)
        throw math_domain_error(std::string(who) +
                                ": requires t >= 10; use the reference evaluator");
}

}  // namespace

namespace calib {

double afe_c_l(std::int64_t q) {
    double fallback = 0.0;
    for (const auto& e : kAfe) {
        if (e.q == q) return e.c_l;
        fallback = std::max(fallback, e.c_l);
    }
    return 2.0 * fallback;
}

double afe_c_lprime(std::int64_t q) {
    double fallback = 0.0;
    for (const auto& e : kAfe) {
        if (e.q == q) return e.c_lprime;
        fallback = std::max(fallback, e.c_lprime);
    }
    return 2.0 * fallback;
}

}  // namespace calib

std::pair<cplx, cplx> l_value_with_deriv(cplx s, const DirichletCharacter& chi,
                                          const EmParams& params) {
    const std::int64_t q = chi.modulus();
    const double qd = static_cast<double>(q);
    const bool near_pole = std::abs(s - cplx{1.0, 0.0}) < 0.25;
    if (chi.is_principal() && std::abs(s - cplx{1.0, 0.0}) < 1e-13)
        throw pole_error("l_value: principal character has a pole at s = 1");

    cplx sum = 0.0, dsum = 0.0;
    for (std::int64_t r = 1; r <= q; ++r) {
        const cplx c = chi(r);
        if (c == cplx{0.0, 0.0}) continue;
        const double alpha = static_cast<double>(r) / qd;
        const auto [z, dz] = (near_pole && !chi.is_principal())
                                 ? hurwitz_zeta_reg_with_deriv(s, alpha, params)
                                 : hurwitz_zeta_with_deriv(s, alpha, params);
        sum += c * z;
        dsum += c * dz;
    }
    // L = q^-s * sum, L' = -log q * L + q^-s * sum'
    const double logq = std::log(qd);
    const cplx qms = std::exp(-s * logq);
    const cplx L = qms * sum;
    const cplx Lp = -logq * L + qms * dsum;
    return {L, Lp};
}

std::pair<cplx, cplx> l_value_with_deriv(cplx s, const DirichletCharacter& chi) {
    return l_value_with_deriv(s, chi, EmParams{});
}

cplx l_value(cplx s, const DirichletCharacter& chi, int deriv) {
    if (deriv != 0 && deriv != 1) throw domain_error("l_value: deriv must be 0 or 1");
    const auto [L, Lp] = l_value_with_deriv(s, chi);
    return deriv == 0 ? L : Lp;
}

cplx delta_factor(cplx s, const DirichletCharacter& chi) {
    require_primitive(chi, "delta_factor");
    const double q = static_cast<double>(chi.modulus());
    const int nu = chi.parity();
    cplx lg_den;
    try {
        lg_den = log_gamma(0.5 * (s + static_cast<double>(nu)));
    } catch (const pole_error&) {
        return 0.0;  // denominator Gamma pole: Delta vanishes (trivial zero site)
    }
    const cplx lg_num = log_gamma(0.5 * (1.0 - s + static_cast<double>(nu)));
    const cplx tau = chi.gauss_sum();
    const cplx pref = tau * std::exp(-kI * (kPi * nu / 2.0)) / std::sqrt(kPi);
    return pref * std::exp(s * std::log(kPi / q) + lg_num - lg_den);
}

cplx delta_factor_product_form(cplx s, const DirichletCharacter& chi) {
    require_primitive(chi, "delta_factor");
    const double q = static_cast<double>(chi.modulus());
    const int nu = chi.parity();
    const double chim1 = nu == 0 ? 1.0 : -1.0;
    const cplx tau = chi.gauss_sum();
    // log-space: Gamma(1-s) and e^(-i pi s/2) separately overflow for large t
    cplx lg;
    try {
        lg = log_gamma(1.0 - s);
    } catch (const pole_error&) {
        throw pole_error("delta_factor_product_form: Gamma(1-s) pole");
    }
    const cplx log_main = std::log(kI * tau * chim1) + (s - 1.0) * std::log(2.0 * kPi) -
                          s * std::log(q) + lg - kI * (kPi / 2.0) * s;
    const cplx corr = 1.0 - chim1 * std::exp(kI * kPi * s);
    if (corr == cplx{0.0, 0.0}) return 0.0;
    return std::exp(log_main + std::log(corr));
}

cplx delta_log_deriv(cplx s, const DirichletCharacter& chi) {
    require_primitive(chi, "delta_log_deriv");
    const double q = static_cast<double>(chi.modulus());
    const double nu = static_cast<double>(chi.parity());
    return std::log(kPi / q) - 0.5 * digamma(0.5 * (1.0 - s + nu)) -
           0.5 * digamma(0.5 * (s + nu));
}

cplx xi_completed_log(cplx s, const DirichletCharacter& chi) {
    require_primitive(chi, "xi_completed");
    const double q = static_cast<double>(chi.modulus());
    const double nu = static_cast<double>(chi.parity());
    const cplx L = l_value(s, chi, 0);
    if (std::abs(L) < 1e-300)
        throw near_singularity_error("xi_completed_log: L(s,chi) vanishes at this point");
    return 0.5 * (s + nu) * std::log(q / kPi) + log_gamma(0.5 * (s + nu)) + std::log(L);
}

cplx xi_completed(cplx s, const DirichletCharacter& chi) {
    return std::exp(xi_completed_log(s, chi));
}

double functional_equation_residual(cplx s, const DirichletCharacter& chi) {
    const auto chibar = chi.conj();
    const cplx eps = chi.gauss_sum() *
                     std::exp(-kI * (kPi * chi.parity() / 2.0)) /
                     std::sqrt(static_cast<double>(chi.modulus()));
    const cplx lhs = xi_completed_log(s, chi);
    const cplx rhs = xi_completed_log(1.0 - s, chibar) + std::log(eps);
    return std::abs(std::exp(rhs - lhs) - 1.0);
}

cplx l_afe(cplx s, const DirichletCharacter& chi) {
    require_primitive(chi, "l_afe");
    check_afe_domain(s, "l_afe");
    const double q = static_cast<double>(chi.modulus());
    const std::int64_t nl = afe_length(q, s.imag());
    const auto chibar = chi.conj();
    const cplx sm1 = s - 1.0;
    const cplx direct = par::blocked_sum(static_cast<std::size_t>(nl), [&](std::size_t i) {
        const double n = static_cast<double>(i + 1);
        return chi(static_cast<std::int64_t>(i + 1)) * std::exp(-s * std::log(n));
    });
    const cplx mirrored = par::blocked_sum(static_cast<std::size_t>(nl), [&](std::size_t i) {
        const double n = static_cast<double>(i + 1);
        return chibar(static_cast<std::int64_t>(i + 1)) * std::exp(sm1 * std::log(n));
    });
    return direct + delta_factor(s, chi) * mirrored;
}

cplx lprime_afe(cplx s, const DirichletCharacter& chi) {
    require_primitive(chi, "lprime_afe");
    check_afe_domain(s, "lprime_afe");
    const double q = static_cast<double>(chi.modulus());
    const double t = s.imag();
    const std::int64_t nl = afe_length(q, t);
    const auto chibar = chi.conj();
    const cplx sm1 = s - 1.0;
    const cplx direct_log = par::blocked_sum(static_cast<std::size_t>(nl), [&](std::size_t i) {
        const double n = static_cast<double>(i + 1);
        const double ln = std::log(n);
        return chi(static_cast<std::int64_t>(i + 1)) * ln * std::exp(-s * ln);
    });
    const cplx mirrored = par::blocked_sum(static_cast<std::size_t>(nl), [&](std::size_t i) {
        const double n = static_cast<double>(i + 1);
        return chibar(static_cast<std::int64_t>(i + 1)) * std::exp(sm1 * std::log(n));
    });
    const cplx mirrored_log = par::blocked_sum(static_cast<std::size_t>(nl), [&](std::size_t i) {
        const double n = static_cast<double>(i + 1);
        const double ln = std::log(n);
        return chibar(static_cast<std::int64_t>(i + 1)) * ln * std::exp(sm1 * ln);
    });
    const cplx delta = delta_factor(s, chi);
    return -direct_log - std::log(q * t / (2.0 * kPi)) * delta * mirrored +
           delta * mirrored_log;
}

cplx log_deriv_shifted(cplx s, const DirichletCharacter& chi, cplx a) {
    const auto [L, Lp] = l_value_with_deriv(s, chi);
    if (std::abs(L - a) < 1e-13)
        throw near_singularity_error("log_deriv_shifted: point is within 1e-13 of an a-point");
    return Lp / (L - a);
}

LEvaluation evaluate(cplx s, const DirichletCharacter& chi, int deriv, EvalMethod method) {
    LEvaluation out;
    out.s = s;
    out.method = method;
    switch (method) {
        case EvalMethod::hurwitz_direct: {
            const auto [L, Lp] = l_value_with_deriv(s, chi);
            out.value = L;
            if (deriv == 1) {
                out.value = Lp;
                out.derivative = Lp;
            }
            out.est_error = 0.0;
            break;
        }
        case EvalMethod::rane_afe: {
            if (deriv != 0)
                throw domain_error("evaluate: rane_afe computes L only (deriv = 0)");
            out.value = l_afe(s, chi);
            out.est_error = calib::afe_c_l(chi.modulus()) *
                            std::pow(s.imag(), -0.5 * s.real());
            break;
        }
        case EvalMethod::lprime_afe: {
            if (deriv != 1)
                throw domain_error("evaluate: lprime_afe computes L' only (deriv = 1)");
            out.value = lprime_afe(s, chi);
            out.derivative = out.value;
            out.est_error = calib::afe_c_lprime(chi.modulus()) *
                            std::pow(s.imag(), -0.5 * s.real()) * std::log(s.imag());
            break;
        }
    }
    return out;
}

}  // namespace lfa
