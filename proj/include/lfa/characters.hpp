#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "lfa/errors.hpp"

namespace lfa {

using cplx = std::complex<double>;

// Cyclic decomposition of the unit group (Z/q)^*: CRT over the prime powers
// dividing q, odd prime powers contributing one cyclic factor each and 2^e
// (e >= 3) contributing the usual pair <-1> x <5>.  Shared by all characters
// of the same modulus.
struct UnitGroup {
    std::int64_t q = 1;
    struct Factor {
        std::int64_t prime_power;   // p^e this factor lives in
        std::int64_t generator;     // generator modulo p^e (lifted mod q later)
        std::int64_t order;         // cyclic order d_i
    };
    std::vector<Factor> factors;
    std::int64_t phi = 1;                       // product of orders
    std::int64_t angle_denom = 1;               // lcm of orders
    // dlog[i][r mod p^e] = exponent of r in factor i, -1 when not coprime
    std::vector<std::vector<std::int32_t>> dlog;

    static std::shared_ptr<const UnitGroup> get(std::int64_t q);
};

// A Dirichlet character mod q, identified by (q, index) where index is the
// lexicographic rank of its exponent vector; index 0 is principal.  Values
// are cached as a full table of exact root-of-unity angles at construction.
class DirichletCharacter {
  public:
    DirichletCharacter(std::int64_t q, std::int64_t index);

    std::int64_t modulus() const noexcept { return q_; }
    std::int64_t index() const noexcept { return index_; }
    std::int64_t conductor() const noexcept { return conductor_; }
    bool is_primitive() const noexcept { return conductor_ == q_; }
    bool is_principal() const noexcept { return index_ == 0; }
    // nu = (1 - chi(-1)) / 2, the parity entering the completed L-function
    int parity() const noexcept { return nu_; }

    cplx operator()(std::int64_t n) const noexcept { return evaluate(n); }
    cplx evaluate(std::int64_t n) const noexcept;

    // exact angle numerator of chi(n) over angle_denom(); -1 when chi(n) = 0
    std::int64_t angle_numerator(std::int64_t n) const noexcept;
    std::int64_t angle_denom() const noexcept { return group_->angle_denom; }

    DirichletCharacter conj() const;

    // tau(chi) = sum_{m mod q} chi(m) e^{2 i pi m / q}
    cplx gauss_sum() const;

    const std::vector<std::int64_t>& exponents() const noexcept { return exps_; }

    bool operator==(const DirichletCharacter& o) const noexcept {
        return q_ == o.q_ && index_ == o.index_;
    }

  private:
    std::int64_t q_;
    std::int64_t index_;
    std::shared_ptr<const UnitGroup> group_;
    std::vector<std::int64_t> exps_;      // exponent vector, one per factor
    std::vector<std::int64_t> angles_;    // angle numerator per residue, -1 = zero
    std::vector<cplx> values_;            // cached chi(r) for r in [0, q)
    std::int64_t conductor_;
    int nu_;
};

// All phi(q) characters mod q in exponent-vector lexicographic order.
std::vector<DirichletCharacter> enumerate_characters(std::int64_t q);

// The primitive ones, same order.
std::vector<DirichletCharacter> primitive_characters(std::int64_t q);

std::int64_t euler_phi(std::int64_t q);

}  // namespace lfa
