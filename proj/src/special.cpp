#include "lfa/special.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace lfa {

namespace {

constexpr double kPi = std::numbers::pi;

// B_2, B_4, ..., B_30
constexpr double kBernoulli2j[] = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
};

bool near_nonpositive_integer(cplx s) {
    if (std::abs(s.imag()) > 1e-13) return false;
    const double r = s.real();
    return r < 0.5 && std::abs(r - std::round(r)) < 1e-13;
}

void check_pole(cplx s, const char* who) {
    if (near_nonpositive_integer(s))
        throw pole_error(std::string(who) + ": pole at nonpositive integer s = " +
                         std::to_string(s.real()));
}

// (w^(1-s) - 1)/(s - 1) and its s-derivative, stable through s = 1
void pole_free_tail(cplx s, double logw, cplx& val, cplx& dval) {
    const cplx v = s - 1.0;
    if (std::abs(v) * logw < 1e-4) {
        const double l2 = logw * logw;
        // (e^(-v logw) - 1)/v = -logw + v logw^2/2 - v^2 logw^3/6 + v^3 logw^4/24
        val = -logw + v * (l2 / 2.0) - v * v * (l2 * logw / 6.0) +
              v * v * v * (l2 * l2 / 24.0);
        dval = l2 / 2.0 - v * (l2 * logw / 3.0) + v * v * (l2 * l2 / 8.0);
    } else {
        const cplx w1ms = std::exp((1.0 - s) * logw);
        val = (w1ms - 1.0) / v;
        dval = (-logw * w1ms * v - (w1ms - 1.0)) / (v * v);
    }
}

// Euler-Maclaurin core shared by the plain and pole-subtracted variants.
std::pair<cplx, cplx> em_core(cplx s, double alpha, const EmParams& params,
                              bool subtract_pole) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw domain_error("hurwitz_zeta: alpha must be in (0, 1]");
    if (!subtract_pole && std::abs(s - cplx{1.0, 0.0}) < 1e-13)
        throw pole_error("hurwitz_zeta: pole at s = 1");

    int N = params.direct_terms > 0
                ? params.direct_terms
                : static_cast<int>(std::max(10.0, 0.6 * std::abs(s.imag()) + 10.0));
    const int M = params.bernoulli_terms > 0 ? params.bernoulli_terms : 12;
    const double target = params.target_abs_error;

    for (int attempt = 0;; ++attempt) {
        const double w = static_cast<double>(N) + alpha;
        const double logw = std::log(w);

        cplx f = 0.0, fd = 0.0;
        for (int k = 0; k < N; ++k) {
            const double base = k + alpha;
            const double lb = std::log(base);
            const cplx t = std::exp(-s * lb);
            f += t;
            fd -= lb * t;
        }

        const cplx wms = std::exp(-s * logw);
        if (subtract_pole) {
            // w^(1-s)/(s-1) - 1/(s-1), merged for stability near s = 1
            cplx tv, td;
            pole_free_tail(s, logw, tv, td);
            f += tv;
            fd += td;
        } else {
            const cplx w1ms = std::exp((1.0 - s) * logw);
            const cplx sm1 = s - 1.0;
            f += w1ms / sm1;
            fd += w1ms * (-logw / sm1 - 1.0 / (sm1 * sm1));
        }
        f += 0.5 * wms;
        fd -= 0.5 * logw * wms;

        // term_j = B_2j/(2j)! * s(s+1)...(s+2j-2) * w^(-s-2j+1)
        cplx rising = s;
        cplx rising_d = 1.0;
        double fact = 2.0;
        cplx wpow = std::exp((-s - 1.0) * logw);
        double last_mag = 0.0;
        for (int j = 1; j <= M; ++j) {
            const double coef = kBernoulli2j[j - 1] / fact;
            const cplx term = coef * rising * wpow;
            const cplx term_d = coef * (rising_d - logw * rising) * wpow;
            f += term;
            fd += term_d;
            last_mag = std::abs(term) + std::abs(term_d);
            const cplx a = s + (2.0 * j - 1.0), b = s + 2.0 * j;
            rising_d = rising_d * a * b + rising * (a + b);
            rising = rising * a * b;
            fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
            wpow /= w * w;
        }
        const double rem =
            std::abs(kBernoulli2j[std::min(M, 14)] / fact * rising * wpow) *
            (std::abs(s + 2.0 * M + 1.0) / std::max(1.0, s.real() + 2.0 * M + 1.0));
        const bool ok = rem <= target || last_mag <= target;

        if (ok) return {f, fd};
        if (attempt >= 6)
            throw domain_error("hurwitz_zeta: Euler-Maclaurin failed to reach target error");
        N = std::max(2 * N, N + 24);
    }
}

}  // namespace

cplx log_gamma(cplx s) {
    check_pole(s, "log_gamma");
    cplx shift = 0.0;
    int guard = 0;
    while (s.real() < 12.0) {
        if (std::abs(s) < 1e-14) throw pole_error("log_gamma: pole");
        shift += std::log(s);
        s += 1.0;
        if (++guard > 100000) throw domain_error("log_gamma: shift runaway");
    }
    const cplx z = s;
    cplx res = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi);
    const cplx z2 = z * z;
    cplx zp = z;
    for (int j = 1; j <= 12; ++j) {
        res += kBernoulli2j[j - 1] / (2.0 * j * (2.0 * j - 1.0)) / zp;
        zp *= z2;
    }
    return res - shift;
}

cplx digamma(cplx s) {
    check_pole(s, "digamma");
    cplx shift = 0.0;
    int guard = 0;
    while (s.real() < 12.0) {
        if (std::abs(s) < 1e-14) throw pole_error("digamma: pole");
        shift += 1.0 / s;
        s += 1.0;
        if (++guard > 100000) throw domain_error("digamma: shift runaway");
    }
    const cplx z = s;
    cplx res = std::log(z) - 0.5 / z;
    const cplx z2 = z * z;
    cplx zp = z2;
    for (int j = 1; j <= 12; ++j) {
        res -= kBernoulli2j[j - 1] / (2.0 * j) / zp;
        zp *= z2;
    }
    return res - shift;
}

cplx polygamma(int m, cplx s) {
    if (m < 0 || m > 4) throw domain_error("polygamma: order must be in [0, 4]");
    if (m == 0) return digamma(s);
    check_pole(s, "polygamma");
    cplx shift = 0.0;
    double mfact = 1.0;
    for (int i = 2; i <= m; ++i) mfact *= i;
    int guard = 0;
    while (s.real() < 12.0) {
        if (std::abs(s) < 1e-14) throw pole_error("polygamma: pole");
        // psi^(m)(z) = psi^(m)(z+1) - (-1)^m m! z^(-m-1)
        shift += (m % 2 == 0 ? -mfact : mfact) * std::pow(s, -m - 1);
        s += 1.0;
        if (++guard > 100000) throw domain_error("polygamma: shift runaway");
    }
    const cplx z = s;
    const double sign = (m % 2 == 1) ? 1.0 : -1.0;  // (-1)^(m-1)
    cplx res = (mfact / static_cast<double>(m)) * std::pow(z, -m);  // (m-1)!/z^m
    res += mfact * 0.5 * std::pow(z, -m - 1);
    const cplx z2 = z * z;
    cplx zp = std::pow(z, -2 - m);
    for (int j = 1; j <= 12; ++j) {
        double rising = 1.0;  // (2j+1)(2j+2)...(2j+m-1)
        for (int i = 2 * j + 1; i <= 2 * j + m - 1; ++i) rising *= i;
        res += kBernoulli2j[j - 1] * rising * zp;
        zp /= z2;
    }
    return sign * res + shift;
}

std::pair<cplx, cplx> hurwitz_zeta_with_deriv(cplx s, double alpha, const EmParams& params) {
    return em_core(s, alpha, params, false);
}

std::pair<cplx, cplx> hurwitz_zeta_reg_with_deriv(cplx s, double alpha, const EmParams& params) {
    return em_core(s, alpha, params, true);
}

cplx hurwitz_zeta(cplx s, double alpha, int deriv, const EmParams& params) {
    if (deriv != 0 && deriv != 1)
        throw domain_error("hurwitz_zeta: deriv must be 0 or 1");
    const auto [f, fd] = em_core(s, alpha, params, false);
    return deriv == 0 ? f : fd;
}

}  // namespace lfa
