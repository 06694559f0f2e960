#ifndef NCL_ARTIN_HPP
#define NCL_ARTIN_HPP

#include "ncl/poly.hpp"

namespace ncl {

// Q(zeta_d)
struct CyclotomicField {
    u32 d = 1;
    u64 degree() const { return totient_u64(d); }
};

// Residue degrees of the primes of Q(zeta_d) above p.  Unramified p: the
// multiplicative order f of p mod d, repeated phi(d)/f times.  Ramified p
// (p | d): the splitting of the unramified part, d' = d / p^{v_p(d)}.
inline std::vector<u32> cyclotomic_splitting(u32 d, u64 p) {
    if (d < 1) throw usage_error("cyclotomic_splitting: d must be >= 1");
    if (!is_prime_u64(p)) throw usage_error("cyclotomic_splitting: p must be prime");
    u64 dprime = d;
    while (dprime % p == 0) dprime /= p;
    u64 f = (dprime == 1) ? 1 : mult_order_u64(p % dprime, dprime);
    u64 g = totient_u64(dprime) / f;
    return std::vector<u32>(g, static_cast<u32>(f));
}

// Denominator polynomial of the local Euler factor of zeta_{Q(zeta_d)} at p,
// in x = p^{-s}: prod_i (1 - x^{f_i}).
inline Poly<Int> dedekind_local_factor(const CyclotomicField& k, u64 p) {
    Poly<Int> r = Poly<Int>::one();
    for (u32 f : cyclotomic_splitting(k.d, p)) {
        std::vector<Int> lin(f + 1, Int(0));
        lin[0] = 1;
        lin[f] = -1;
        r = r * Poly<Int>(std::move(lin));
    }
    return r;
}

// d-th cyclotomic polynomial by iterative division of x^d - 1.
inline Poly<Int> cyclotomic_polynomial(u32 d) {
    if (d < 1) throw usage_error("cyclotomic_polynomial: d must be >= 1");
    std::vector<Int> x1{Int(-1), Int(1)};
    if (d == 1) return Poly<Int>(std::move(x1));
    std::vector<Int> xd(d + 1, Int(0));
    xd[0] = -1;
    xd[d] = 1;
    Poly<Rat> num = to_rat(Poly<Int>(std::move(xd)));
    for (u64 dd : divisors_u64(d)) {
        if (dd == d) continue;
        auto [q, r] = poly_divrem(num, to_rat(cyclotomic_polynomial(static_cast<u32>(dd))));
        if (!r.is_zero()) throw error("cyclotomic division not exact");
        num = q;
    }
    return to_int_checked(num, "cyclotomic polynomial");
}

// prod_{p <= bound} (1 - p^{-s})^{-1} with compensated log summation.
inline cplx zeta_q_partial(cplx s, u64 prime_bound) {
    Kahan<double> re, im;
    for (u64 p : primes_up_to(prime_bound)) {
        cplx x = std::exp(-s * std::log(static_cast<double>(p)));
        cplx t = -std::log(cplx(1.0, 0.0) - x);
        re.add(t.real());
        im.add(t.imag());
    }
    return std::exp(cplx(re.value(), im.value()));
}

} // namespace ncl

#endif
