#ifndef NCL_MOTIVE_HPP
#define NCL_MOTIVE_HPP

#include "ncl/lfunction.hpp"

namespace ncl {

// A formal direct sum of atoms; each atom carries parity-graded
// local-factor data.  The L-functions of a motive are the products of the
// atoms' L-functions, place by place.
struct Atom {
    std::string label;
    CohomDatum even;
    CohomDatum odd;
};

struct NCMotive {
    GlobalBase base;
    std::vector<Atom> atoms;
    std::vector<std::string> provenance;

    LSeriesHandle handle(Parity parity, int cutoff) const {
        std::vector<CohomDatum> data;
        for (const auto& a : atoms) data.push_back(parity == Parity::Even ? a.even : a.odd);
        return make_handle(base, parity, std::move(data), cutoff);
    }
    std::optional<LocalFactor> local_factor_at(Parity parity, const Place& v) const {
        return handle_local_factor(handle(parity, 1), v);
    }
};

inline CohomDatum empty_datum(const GlobalBase& base, Parity parity) {
    CohomDatum d;
    d.parity = parity;
    if (base.kind == GlobalBase::Kind::FunctionField)
        d.source = ConstantFamilySource{base.q(), {}};
    else
        d.source = ExplicitLocalSource{};
    return d;
}

// The unit motive: L_even = zeta_k, L_odd = 1.
inline NCMotive zeta_atom(const GlobalBase& base, const std::string& label = "zeta") {
    NCMotive m;
    m.base = base;
    Atom a;
    a.label = label;
    a.even.parity = Parity::Even;
    if (base.kind == GlobalBase::Kind::FunctionField) {
        ConstantFamilySource cf{base.q(), {}};
        cf.blocks.push_back(
            make_twisted_block(0, 0, Poly<Int>(std::vector<Int>{Int(1), Int(-1)}), base.q()));
        a.even.source = cf;
    } else {
        a.even.source = ArtinSource{1};
    }
    a.odd = empty_datum(base, Parity::Odd);
    m.atoms.push_back(std::move(a));
    m.provenance.push_back("zeta");
    return m;
}

inline NCMotive zeta_power(const GlobalBase& base, u32 n) {
    NCMotive m;
    m.base = base;
    for (u32 i = 0; i < n; ++i) {
        auto z = zeta_atom(base, "zeta_" + std::to_string(i));
        m.atoms.push_back(std::move(z.atoms[0]));
    }
    m.provenance.push_back("zeta^" + std::to_string(n));
    return m;
}

// Motive of a smooth variety from its (reconstructed) zeta function.
inline NCMotive motive_from_zeta(const GlobalBase& base, const std::string& label,
                                 const RationalFunctionT& z) {
    if (base.kind != GlobalBase::Kind::FunctionField)
        throw usage_error("motive_from_zeta: function-field base required");
    auto blocks = weight_split(z, base.q());
    auto [even, odd] = tate_twist_assemble(blocks, base.q());
    NCMotive m;
    m.base = base;
    m.atoms.push_back(Atom{label, even, odd});
    m.provenance.push_back("perf(" + label + ")");
    return m;
}

inline NCMotive projective_space_motive(const GlobalBase& base, u32 n,
                                        const std::string& label = "P^n") {
    Poly<Rat> den = Poly<Rat>::one();
    for (u32 i = 0; i <= n; ++i) {
        Int qi = ipow(Int(base.q()), i);
        den = den * Poly<Rat>(std::vector<Rat>{Rat(1), Rat(-qi)});
    }
    return motive_from_zeta(base, label, RationalFunctionT::make(Poly<Rat>::one(), den));
}

// ---------------------------------------------------------------------------
// Operations

inline NCMotive direct_sum(const NCMotive& m1, const NCMotive& m2,
                           const char* tag = "sum") {
    if (m1.base != m2.base) throw base_mismatch_error("direct_sum: base fields differ");
    NCMotive m;
    m.base = m1.base;
    m.atoms = m1.atoms;
    m.atoms.insert(m.atoms.end(), m2.atoms.begin(), m2.atoms.end());
    m.provenance = m1.provenance;
    m.provenance.insert(m.provenance.end(), m2.provenance.begin(), m2.provenance.end());
    m.provenance.push_back(tag);
    return m;
}

// The gluing has the same L-functions as the direct sum (the bimodule does
// not contribute); only the provenance differs.
inline NCMotive gluing(const NCMotive& mX, const NCMotive& mY) {
    return direct_sum(mX, mY, "gluing");
}

namespace detail {

// remove one exact factor (1 - c T) from some constant-family block of the
// even datum, lowest weight first; returns false if no unit eigenvalue
inline bool remove_unit_eigenvalue(CohomDatum& even, u64 q) {
    auto* cf = std::get_if<ConstantFamilySource>(&even.source);
    if (!cf) return false;
    // sort keys: lowest weight first (deterministic removal)
    std::vector<size_t> order(cf->blocks.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return cf->blocks[a].w < cf->blocks[b].w;
    });
    for (size_t idx : order) {
        auto& b = cf->blocks[idx];
        Int c = ipow(Int(q), b.shift); // twisted eigenvalue 1 <=> alpha = q^shift
        auto [rest, mult] = extract_linear(b.charpoly, c);
        if (mult == 0) continue;
        // put back all but one factor
        Poly<Int> lin(std::vector<Int>{Int(1), -c});
        Poly<Int> cp = rest;
        for (u32 k = 0; k + 1 < mult; ++k) cp = cp * lin;
        if (cp.degree() < 1) {
            cf->blocks.erase(cf->blocks.begin() + static_cast<long>(idx));
        } else {
            b = make_twisted_block(b.w, b.shift, cp, q);
        }
        return true;
    }
    return false;
}

} // namespace detail

// Split off the Calabi-Yau part of the motive of a degree-deg hypersurface
// in P^n: removes n - deg + 1 unit atoms from the even part (the exceptional
// objects O_X, ..., O_X(n - deg)); the odd part is untouched.
inline NCMotive cy_summand(const NCMotive& mX, u32 n, u32 deg) {
    if (mX.base.kind != GlobalBase::Kind::FunctionField)
        throw usage_error("cy_summand: function-field motive required");
    if (deg > n + 1) throw usage_error("cy_summand: requires deg <= n+1");
    u32 k = n - deg + 1;
    NCMotive out = mX;
    u64 q = mX.base.q();
    for (u32 i = 0; i < k; ++i) {
        bool removed = false;
        for (auto& atom : out.atoms)
            if (detail::remove_unit_eigenvalue(atom.even, q)) {
                removed = true;
                break;
            }
        if (!removed)
            throw cannot_split_error("cy_summand: not enough unit eigenvalues in the even part");
    }
    out.provenance.push_back("cy(" + std::to_string(n) + "," + std::to_string(deg) + ")");
    // verification: original even factors = result * zeta^k, place by place
    auto zk = zeta_power(mX.base, k);
    auto check = direct_sum(out, zk, "cy-check");
    auto F = Field::make(mX.base.p, mX.base.e);
    for (const auto& v : enumerate_places(*F, 2)) {
        auto a = mX.local_factor_at(Parity::Even, v);
        auto b = check.local_factor_at(Parity::Even, v);
        if (!a->exact || !b->exact || !(*a->exact == *b->exact))
            throw error("cy_summand: internal verification failed");
    }
    return out;
}

// Path algebra of an acyclic quiver: the even part is `vertices` unit atoms.
inline NCMotive path_algebra_atom(const GlobalBase& base, u32 vertices) {
    if (vertices < 1) throw usage_error("path_algebra_atom: vertices must be >= 1");
    auto m = zeta_power(base, vertices);
    m.provenance.push_back("path(" + std::to_string(vertices) + ")");
    return m;
}

// Q[Z/n] = prod_{d | n} Q(zeta_d): one Artin atom per divisor.
inline NCMotive group_algebra_atom(const GlobalBase& base, u32 n) {
    if (base.kind != GlobalBase::Kind::Rationals)
        throw usage_error("group_algebra_atom: base field must be Q");
    if (n < 1) throw usage_error("group_algebra_atom: n must be >= 1");
    NCMotive m;
    m.base = base;
    for (u64 d : divisors_u64(n)) {
        Atom a;
        a.label = "Q(zeta_" + std::to_string(d) + ")";
        a.even.parity = Parity::Even;
        a.even.source = ArtinSource{static_cast<u32>(d)};
        a.odd = empty_datum(base, Parity::Odd);
        m.atoms.push_back(std::move(a));
    }
    m.provenance.push_back("Q[Z/" + std::to_string(n) + "]");
    return m;
}

// ---------------------------------------------------------------------------
// HPD bookkeeping check: L_even(X_L) * zeta^b = zeta^a * L_even(Y_L) and
// L_odd(X_L) = L_odd(Y_L), place by place up to degree B.

struct HPDPlaceFailure {
    Place place;
    Parity parity;
    double residual;
};

struct HPDReport {
    bool pass = true;
    double max_residual = 0.0;
    std::vector<HPDPlaceFailure> failures;
};

namespace detail {

inline double poly_distance(const Poly<cplx>& a, const Poly<cplx>& b) {
    double m = 0.0;
    int d = std::max(a.degree(), b.degree());
    for (int i = 0; i <= d; ++i) m = std::max(m, std::abs(a.coeff(i) - b.coeff(i)));
    return m;
}

} // namespace detail

inline HPDReport hpd_check(const NCMotive& mXL, const NCMotive& mYL, u32 a, u32 b,
                           int B, double tol) {
    if (mXL.base != mYL.base) throw base_mismatch_error("hpd_check: base fields differ");
    HPDReport rep;
    auto lhs = direct_sum(mXL, zeta_power(mXL.base, b), "hpd-lhs");
    auto rhs = direct_sum(zeta_power(mYL.base, a), mYL, "hpd-rhs");
    std::vector<Place> places;
    if (mXL.base.kind == GlobalBase::Kind::FunctionField) {
        auto F = Field::make(mXL.base.p, mXL.base.e);
        places = enumerate_places(*F, static_cast<u32>(B));
    } else {
        for (u64 p : primes_up_to(static_cast<u64>(B))) places.push_back(Place::number_field(p));
    }
    auto compare = [&](Parity parity, const NCMotive& L, const NCMotive& R) {
        for (const auto& v : places) {
            auto lf = L.local_factor_at(parity, v);
            auto rf = R.local_factor_at(parity, v);
            double resid;
            if (lf->exact && rf->exact)
                resid = (*lf->exact == *rf->exact) ? 0.0 :
                        detail::poly_distance(to_cplx(*lf->exact), to_cplx(*rf->exact));
            else
                resid = detail::poly_distance(lf->approx, rf->approx);
            rep.max_residual = std::max(rep.max_residual, resid);
            if (resid > tol) {
                rep.pass = false;
                rep.failures.push_back({v, parity, resid});
            }
        }
    };
    compare(Parity::Even, lhs, rhs);
    compare(Parity::Odd, mXL, mYL);
    return rep;
}

} // namespace ncl

#endif
