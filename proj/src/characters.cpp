#include "lfa/characters.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <string>

namespace lfa {

namespace {

std::int64_t pow_mod(std::int64_t b, std::int64_t e, std::int64_t m) {
    std::int64_t r = 1 % m;
    b %= m;
    while (e > 0) {
        if (e & 1) r = (__int128)r * b % m;
        b = (__int128)b * b % m;
        e >>= 1;
    }
    return r;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// primitive root mod p^e for odd prime p
std::int64_t primitive_root(std::int64_t p, int e) {
    const std::int64_t phi_p = p - 1;
    const auto qs = prime_factors(phi_p);
    std::int64_t g = 0;
    for (std::int64_t cand = 2; cand < p; ++cand) {
        bool ok = true;
        for (auto f : qs)
            if (pow_mod(cand, phi_p / f, p) == 1) { ok = false; break; }
        if (ok) { g = cand; break; }
    }
    if (e == 1) return g;
    // lift: g is primitive mod p^e unless g^(p-1) = 1 mod p^2
    std::int64_t p2 = p * p;
    if (pow_mod(g, p - 1, p2) == 1) g += p;
    return g;
}

}  // namespace

std::shared_ptr<const UnitGroup> UnitGroup::get(std::int64_t q) {
    if (q < 1) throw domain_error("UnitGroup: modulus must be >= 1");
    static std::mutex mu;
    static std::map<std::int64_t, std::shared_ptr<const UnitGroup>> cache;
    std::lock_guard lock(mu);
    if (auto it = cache.find(q); it != cache.end()) return it->second;

    auto g = std::make_shared<UnitGroup>();
    g->q = q;
    std::int64_t rest = q;
    std::vector<std::pair<std::int64_t, int>> pps;
    for (std::int64_t p = 2; p * p <= rest; ++p) {
        if (rest % p == 0) {
            int e = 0;
            std::int64_t pe = 1;
            while (rest % p == 0) { rest /= p; ++e; pe *= p; }
            pps.emplace_back(p, e);
        }
    }
    if (rest > 1) pps.emplace_back(rest, 1);
    std::sort(pps.begin(), pps.end());

    for (const auto& [p, e] : pps) {
        std::int64_t pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        if (p == 2) {
            if (e == 1) continue;  // U(2) trivial
            if (e == 2) {
                g->factors.push_back({pe, 3, 2});
            } else {
                // standard pair: <-1> of order 2, <5> of order 2^(e-2)
                g->factors.push_back({pe, pe - 1, 2});
                g->factors.push_back({pe, 5, pe / 4});
            }
        } else {
            g->factors.push_back({pe, primitive_root(p, e), pe / p * (p - 1)});
        }
    }

    g->phi = 1;
    g->angle_denom = 1;
    for (const auto& f : g->factors) {
        g->phi *= f.order;
        g->angle_denom = std::lcm(g->angle_denom, f.order);
    }

    // discrete logs per factor, indexed by residue mod prime_power
    g->dlog.resize(g->factors.size());
    for (std::size_t i = 0; i < g->factors.size(); ++i) {
        const auto& f = g->factors[i];
        g->dlog[i].assign(static_cast<std::size_t>(f.prime_power), -1);
    }
    // powers of 2 with e >= 3 need the joint <-1> x <5> table
    std::size_t i2 = 0;
    while (i2 < g->factors.size()) {
        const auto& f = g->factors[i2];
        if (f.prime_power % 2 == 0 && f.prime_power >= 8) {
            const std::int64_t pe = f.prime_power;
            auto& da = g->dlog[i2];      // exponent of -1
            auto& db = g->dlog[i2 + 1];  // exponent of 5
            std::int64_t v = 1;
            for (std::int64_t b = 0; b < pe / 4; ++b) {
                da[v] = 0; db[v] = static_cast<std::int32_t>(b);
                const std::int64_t w = pe - v;  // -v
                da[w] = 1; db[w] = static_cast<std::int32_t>(b);
                v = v * 5 % pe;
            }
            i2 += 2;
        } else {
            auto& d = g->dlog[i2];
            std::int64_t v = 1;
            for (std::int64_t k = 0; k < f.order; ++k) {
                d[v] = static_cast<std::int32_t>(k);
                v = (__int128)v * f.generator % f.prime_power;
            }
            ++i2;
        }
    }

    cache[q] = g;
    return g;
}

std::int64_t euler_phi(std::int64_t q) { return UnitGroup::get(q)->phi; }

DirichletCharacter::DirichletCharacter(std::int64_t q, std::int64_t index)
    : q_(q), index_(index), group_(UnitGroup::get(q)) {
    if (index < 0 || index >= group_->phi)
        throw domain_error("character index " + std::to_string(index) +
                           " out of range for modulus " + std::to_string(q) +
                           " (phi = " + std::to_string(group_->phi) + ")");
    // decode lexicographic index into the exponent vector
    exps_.assign(group_->factors.size(), 0);
    std::int64_t rem = index;
    for (std::size_t i = group_->factors.size(); i-- > 0;) {
        const auto d = group_->factors[i].order;
        exps_[i] = rem % d;
        rem /= d;
    }

    const std::int64_t D = group_->angle_denom;
    angles_.assign(static_cast<std::size_t>(q_), -1);
    values_.assign(static_cast<std::size_t>(q_), cplx{0.0, 0.0});
    if (q_ == 1) {
        angles_[0] = 0;
        values_[0] = 1.0;
    } else {
        for (std::int64_t r = 0; r < q_; ++r) {
            if (std::gcd(r, q_) != 1) continue;
            std::int64_t num = 0;
            bool coprime = true;
            for (std::size_t i = 0; i < group_->factors.size(); ++i) {
                const auto& f = group_->factors[i];
                const std::int32_t dl = group_->dlog[i][r % f.prime_power];
                if (dl < 0) { coprime = false; break; }
                num = (num + exps_[i] * (D / f.order) % D * dl) % D;
            }
            if (!coprime) continue;
            angles_[r] = num;
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(num) /
                                 static_cast<double>(D);
            values_[r] = cplx{std::cos(theta), std::sin(theta)};
        }
    }

    // parity from chi(-1)
    const std::int64_t m1 = (q_ - 1) % q_;
    nu_ = (q_ == 1 || angles_[m1] == 0) ? 0 : 1;

    // conductor: smallest f | q with chi trivial on {n = 1 mod f, gcd(n,q)=1}
    conductor_ = q_;
    for (std::int64_t f = 1; f <= q_; ++f) {
        if (q_ % f != 0) continue;
        bool induced = true;
        for (std::int64_t n = 1; n < q_ && induced; n += f)
            if (angles_[n % q_] >= 0 && angles_[n % q_] != 0) induced = false;
        if (induced) { conductor_ = f; break; }
    }
}

cplx DirichletCharacter::evaluate(std::int64_t n) const noexcept {
    std::int64_t r = n % q_;
    if (r < 0) r += q_;
    return values_[static_cast<std::size_t>(r)];
}

std::int64_t DirichletCharacter::angle_numerator(std::int64_t n) const noexcept {
    std::int64_t r = n % q_;
    if (r < 0) r += q_;
    return angles_[static_cast<std::size_t>(r)];
}

DirichletCharacter DirichletCharacter::conj() const {
    std::int64_t idx = 0;
    for (std::size_t i = 0; i < group_->factors.size(); ++i) {
        const auto d = group_->factors[i].order;
        idx = idx * d + (d - exps_[i]) % d;
    }
    return DirichletCharacter(q_, idx);
}

cplx DirichletCharacter::gauss_sum() const {
    cplx tau = 0.0;
    for (std::int64_t m = 0; m < q_; ++m) {
        if (angles_[m] < 0) continue;
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(m) /
                             static_cast<double>(q_);
        tau += values_[m] * cplx{std::cos(theta), std::sin(theta)};
    }
    return tau;
}

std::vector<DirichletCharacter> enumerate_characters(std::int64_t q) {
    const auto g = UnitGroup::get(q);
    std::vector<DirichletCharacter> out;
    out.reserve(static_cast<std::size_t>(g->phi));
    for (std::int64_t i = 0; i < g->phi; ++i) out.emplace_back(q, i);
    return out;
}

std::vector<DirichletCharacter> primitive_characters(std::int64_t q) {
    std::vector<DirichletCharacter> out;
    for (auto& chi : enumerate_characters(q))
        if (chi.is_primitive()) out.push_back(chi);
    return out;
}

}  // namespace lfa
