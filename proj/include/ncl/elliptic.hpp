#ifndef NCL_ELLIPTIC_HPP
#define NCL_ELLIPTIC_HPP

#include <random>

#include "ncl/riemann.hpp"

namespace ncl {

// y^2 = x^3 + A(t) x + B(t) over F_q(t), char(F_q) >= 5.
struct EllipticFamily {
    FieldPtr Fq;
    FqPoly A, B;

    static EllipticFamily make(FieldPtr Fq, FqPoly A, FqPoly B) {
        if (Fq->characteristic() < 5)
            throw usage_error("elliptic families need characteristic >= 5");
        EllipticFamily E{std::move(Fq), std::move(A), std::move(B)};
        fq_trim(E.A);
        fq_trim(E.B);
        if (E.discriminant().empty())
            throw usage_error("elliptic family: discriminant vanishes identically");
        return E;
    }

    // -16 (4A^3 + 27B^2)
    FqPoly discriminant() const {
        const Field& F = *Fq;
        u32 p = F.characteristic();
        FqPoly A3 = fq_mul(F, fq_mul(F, A, A), A);
        FqPoly B2 = fq_mul(F, B, B);
        FqPoly d = fq_add(F, fq_scale(F, A3, 4 % p), fq_scale(F, B2, 27 % p));
        return fq_scale(F, d, F.neg(16 % p));
    }
    // c4 = -48 A
    FqPoly c4() const {
        return fq_scale(*Fq, A, Fq->neg(48 % Fq->characteristic()));
    }
    bool is_constant() const { return fq_deg(A) <= 0 && fq_deg(B) <= 0; }
    // j = 6912 A^3 / (4A^3 + 27B^2), as a reduced (numerator, denominator) pair
    std::pair<FqPoly, FqPoly> j_invariant() const;
    bool is_isotrivial() const;
};

inline FqPoly fq_gcd(const Field& F, FqPoly a, FqPoly b) {
    while (!b.empty()) {
        auto r = fq_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) a = fq_scale(F, a, F.inv(a.back()));
    return a;
}

inline std::pair<FqPoly, FqPoly> EllipticFamily::j_invariant() const {
    const Field& F = *Fq;
    u32 p = F.characteristic();
    FqPoly A3 = fq_mul(F, fq_mul(F, A, A), A);
    FqPoly num = fq_scale(F, A3, static_cast<u32>(6912 % p));
    FqPoly den = fq_add(F, fq_scale(F, A3, 4 % p),
                        fq_scale(F, fq_mul(F, B, B), 27 % p));
    auto g = fq_gcd(F, num, den);
    if (fq_deg(g) > 0) {
        num = fq_divrem(F, num, g).first;
        den = fq_divrem(F, den, g).first;
    }
    if (!den.empty() && den.back() != 1) {
        u32 inv = F.inv(den.back());
        num = fq_scale(F, num, inv);
        den = fq_scale(F, den, inv);
    }
    return {num, den};
}

// isotrivial iff j is a constant function
inline bool EllipticFamily::is_isotrivial() const {
    auto [num, den] = j_invariant();
    return fq_deg(num) <= 0 && fq_deg(den) <= 0;
}

enum class ReductionType { Good, MultiplicativeSplit, MultiplicativeNonsplit, Additive };

inline const char* reduction_name(ReductionType t) {
    switch (t) {
        case ReductionType::Good: return "good";
        case ReductionType::MultiplicativeSplit: return "multiplicative-split";
        case ReductionType::MultiplicativeNonsplit: return "multiplicative-nonsplit";
        default: return "additive";
    }
}

struct LocalReduction {
    Place place;
    bool at_infinity = false;
    ReductionType type = ReductionType::Good;
    i64 a_v = 0;
    u32 v_delta = 0;
};

// ---------------------------------------------------------------------------
// Group order over a residue field: brute quadratic-character scan below the
// threshold, baby-step giant-step with exponent disambiguation above it.

namespace detail {

struct ECPoint {
    u32 x = 0, y = 0;
    bool inf = true;
};

struct ECGroup {
    const Field& F;
    u32 A, B;

    ECPoint neg(const ECPoint& P) const {
        if (P.inf) return P;
        return {P.x, F.neg(P.y), false};
    }
    ECPoint add(const ECPoint& P, const ECPoint& Q) const {
        if (P.inf) return Q;
        if (Q.inf) return P;
        u32 lam;
        if (P.x == Q.x) {
            if (F.add(P.y, Q.y) == 0) return {};
            u32 num = F.add(F.mul(3 % F.characteristic(), F.mul(P.x, P.x)), A);
            lam = F.mul(num, F.inv(F.mul(2 % F.characteristic(), P.y)));
        } else {
            lam = F.mul(F.sub(Q.y, P.y), F.inv(F.sub(Q.x, P.x)));
        }
        u32 x3 = F.sub(F.sub(F.mul(lam, lam), P.x), Q.x);
        u32 y3 = F.sub(F.mul(lam, F.sub(P.x, x3)), P.y);
        return {x3, y3, false};
    }
    ECPoint mul(ECPoint P, u64 k) const {
        ECPoint R;
        while (k) {
            if (k & 1) R = add(R, P);
            P = add(P, P);
            k >>= 1;
        }
        return R;
    }
};

inline u64 pack_point(const ECPoint& P) {
    return P.inf ? ~0ULL : ((static_cast<u64>(P.x) << 32) | P.y);
}

// full projective count, singular points included
inline u64 ec_brute_count(const Field& F, u32 A, u32 B) {
    F.ensure_tables();
    u64 Q = F.size();
    u64 affine = 0;
    for (u64 xi = 0; xi < Q; ++xi) {
        u32 x = static_cast<u32>(xi);
        u32 u = F.add(F.add(F.mul(F.mul(x, x), x), F.mul(A, x)), B);
        affine += static_cast<u64>(1 + F.chi(u));
    }
    return affine + 1;
}

// some multiple of ord(P) in [lo, hi] (one exists: the group order)
inline u64 ec_find_annihilator(const ECGroup& G, const ECPoint& P, u64 lo, u64 hi) {
    ECPoint R = G.mul(P, lo);
    if (R.inf) return lo;
    u64 range = hi - lo;
    u32 bs = static_cast<u32>(isqrt_u64(range)) + 1;
    std::vector<std::pair<u64, u32>> baby;
    baby.reserve(bs);
    ECPoint T;
    for (u32 j = 0; j < bs; ++j) {
        baby.emplace_back(pack_point(T), j);
        T = G.add(T, P);
    }
    std::sort(baby.begin(), baby.end());
    auto lookup = [&](const ECPoint& X) -> i64 {
        u64 key = pack_point(X);
        auto it = std::lower_bound(baby.begin(), baby.end(), std::make_pair(key, 0u));
        if (it != baby.end() && it->first == key) return static_cast<i64>(it->second);
        return -1;
    };
    // k P = -R with k = i*bs + j  <=>  j P = -R - i*(bs P)
    ECPoint big_neg = G.neg(G.mul(P, bs));
    ECPoint cur = G.neg(R);
    for (u64 i = 0; i * bs <= range + bs; ++i) {
        i64 j = lookup(cur);
        if (j >= 0) {
            u64 k = i * bs + static_cast<u64>(j);
            if (k <= range) return lo + k;
        }
        cur = G.add(cur, big_neg);
    }
    throw error("baby-step giant-step: no annihilator found");
}

inline u64 ec_order_from_multiple(const ECGroup& G, const ECPoint& P, u64 n) {
    for (auto& [pr, ex] : factor_u64(n)) {
        for (u32 i = 0; i < ex; ++i) {
            if (n % pr != 0) break;
            if (G.mul(P, n / pr).inf)
                n /= pr;
            else
                break;
        }
    }
    return n;
}

// #E(F_Q) for a smooth y^2 = x^3 + Ax + B.  Exact: the lcm of sampled point
// orders either pins a unique multiple in the Hasse interval or we fall
// back to the brute scan.
inline u64 ec_group_order(const Field& F, u32 A, u32 B, u64 brute_threshold = 6000) {
    u64 Q = F.size();
    if (Q <= brute_threshold) return ec_brute_count(F, A, B);
    F.ensure_tables();
    ECGroup G{F, A, B};
    u64 t = isqrt_u64(4 * Q);
    u64 lo = Q + 1 - t, hi = Q + 1 + t;
    std::mt19937_64 rng(fnv1a("ec:" + std::to_string(Q) + ":" + std::to_string(A) + ":" +
                              std::to_string(B)));
    u64 e = 1;
    for (int iter = 0; iter < 48; ++iter) {
        u32 x = static_cast<u32>(rng() % Q);
        u32 u = F.add(F.add(F.mul(F.mul(x, x), x), F.mul(A, x)), B);
        int ch = F.chi(u);
        if (ch < 0) continue;
        detail::ECPoint P{x, u == 0 ? 0 : *F.sqrt_of(u), false};
        u64 n = ec_find_annihilator(G, P, lo, hi);
        n = ec_order_from_multiple(G, P, n);
        e = lcm_u64(e, n);
        u64 first = ((lo + e - 1) / e) * e;
        if (first > hi) throw error("ec order: exponent exceeds Hasse interval");
        if ((hi - first) / e + 1 == 1) return first;
    }
    return ec_brute_count(F, A, B);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Reduction at a place

namespace detail {

inline u32 fq_valuation(const Field& F, FqPoly f, const FqPoly& g) {
    u32 v = 0;
    while (!f.empty()) {
        auto [q, r] = fq_divrem(F, f, g);
        if (!r.empty()) break;
        ++v;
        f = std::move(q);
    }
    return v;
}

// kappa = residue field at v, tau = image of t in kappa
inline LocalReduction reduce_core(const EllipticFamily& E, const Field& kappa, u32 tau,
                                  const Place& v, bool at_infinity,
                                  u64 brute_threshold = 6000) {
    const Field& F = *E.Fq;
    u32 Abar = fq_eval(kappa, E.A, tau);
    u32 Bbar = fq_eval(kappa, E.B, tau);
    u64 N = kappa.size();
    LocalReduction r;
    r.place = v;
    r.at_infinity = at_infinity;
    FqPoly delta = E.discriminant();
    u32 p = F.characteristic();
    u32 dbar = kappa.add(kappa.mul(4 % p, kappa.mul(kappa.mul(Abar, Abar), Abar)),
                         kappa.mul(27 % p, kappa.mul(Bbar, Bbar)));
    if (dbar != 0) {
        r.type = ReductionType::Good;
        r.v_delta = 0;
        u64 order = ec_group_order(kappa, Abar, Bbar, brute_threshold);
        r.a_v = static_cast<i64>(N) + 1 - static_cast<i64>(order);
        if (static_cast<double>(r.a_v) * static_cast<double>(r.a_v) > 4.0 * static_cast<double>(N))
            throw error("Hasse bound violated (internal counting error)");
        return r;
    }
    r.v_delta = fq_valuation(F, delta, v.gen);
    if (r.v_delta >= 12) {
        u32 vc4 = E.A.empty() ? 4 : fq_valuation(F, E.c4(), v.gen);
        if (vc4 >= 4)
            throw nonminimal_model_error("model not minimal at place " + v.to_text() +
                                         " (v(D) >= 12 and v(c4) >= 4); minimalize first");
    }
    u64 cnt = ec_brute_count(kappa, Abar, Bbar);
    r.a_v = static_cast<i64>(N) + 1 - static_cast<i64>(cnt);
    if (r.a_v == 1)
        r.type = ReductionType::MultiplicativeSplit;
    else if (r.a_v == -1)
        r.type = ReductionType::MultiplicativeNonsplit;
    else if (r.a_v == 0)
        r.type = ReductionType::Additive;
    else
        throw error("bad-fiber point count out of range (internal)");
    return r;
}

} // namespace detail

inline LocalReduction reduce_at_place(const EllipticFamily& E, const Place& v,
                                      u64 brute_threshold = 6000) {
    if (v.kind != Place::Kind::FunctionField || v.q() != E.Fq->size())
        throw base_mismatch_error("reduce_at_place: place not over the family's base field");
    if (fq_deg(v.gen) == 1) {
        u32 tau = E.Fq->neg(v.gen[0]);
        return detail::reduce_core(E, *E.Fq, tau, v, false, brute_threshold);
    }
    auto kappa = Field::extension(E.Fq, v.gen);
    return detail::reduce_core(E, *kappa, kappa->gen_x(), v, false, brute_threshold);
}

// Coordinate change t -> 1/s, (x, y) -> (x/s^{2m}, y/s^{3m}) with the minimal
// m making the coefficients polynomial in s: A_inf = s^{4m} A(1/s),
// B_inf = s^{6m} B(1/s).
struct InfinityModel {
    EllipticFamily family; // over F_q[s]
    u32 m = 0;
};

inline InfinityModel infinity_model(const EllipticFamily& E) {
    int degA = fq_deg(E.A), degB = fq_deg(E.B);
    u32 m = 0;
    if (degA > 0) m = std::max<u32>(m, (static_cast<u32>(degA) + 3) / 4);
    if (degB > 0) m = std::max<u32>(m, (static_cast<u32>(degB) + 5) / 6);
    FqPoly Ai(4 * m + 1, 0), Bi(6 * m + 1, 0);
    for (int i = 0; i <= degA; ++i) Ai[4 * m - i] = E.A[i];
    for (int i = 0; i <= degB; ++i) Bi[6 * m - i] = E.B[i];
    fq_trim(Ai);
    fq_trim(Bi);
    InfinityModel out;
    out.family = EllipticFamily::make(E.Fq, std::move(Ai), std::move(Bi));
    out.m = m;
    return out;
}

inline LocalReduction reduce_at_infinity(const EllipticFamily& E, u64 brute_threshold = 6000) {
    auto inf = infinity_model(E);
    Place v = Place::function_field(E.Fq->characteristic(), E.Fq->abs_degree(), {0, 1});
    auto r = detail::reduce_core(inf.family, *E.Fq, 0, v, true, brute_threshold);
    return r;
}

// ---------------------------------------------------------------------------
// L-polynomial from the Euler product over all places (incl. infinity)

class EllipticL {
public:
    explicit EllipticL(EllipticFamily E, u64 brute_threshold = 6000, int threads = 0)
        : E_(std::move(E)), brute_threshold_(brute_threshold), threads_(threads) {
        if (E_.is_constant())
            throw usage_error("constant family: L-polynomial not defined "
                              "(use the constant-family closed form)");
        isotrivial_ = E_.is_isotrivial();
    }

    bool isotrivial() const { return isotrivial_; }
    const EllipticFamily& family() const { return E_; }

    const LocalReduction& infinity() {
        if (!inf_) inf_ = reduce_at_infinity(E_, brute_threshold_);
        return *inf_;
    }

    const std::vector<LocalReduction>& slice(u32 d) {
        auto it = cache_.find(d);
        if (it != cache_.end()) return it->second;
        auto sl = place_slice(E_.Fq, d);
        const Field& kappa = *sl.kappa;
        auto chunks = parallel_chunks<std::vector<LocalReduction>>(
            sl.orbits.size(), threads_,
            std::function<std::vector<LocalReduction>(u64, u64)>([&](u64 lo, u64 hi) {
                std::vector<LocalReduction> part;
                part.reserve(hi - lo);
                for (u64 i = lo; i < hi; ++i)
                    part.push_back(detail::reduce_core(E_, kappa, sl.orbits[i].tau,
                                                       sl.orbits[i].place, false,
                                                       brute_threshold_));
                return part;
            }),
            256);
        std::vector<LocalReduction> all;
        for (auto& c : chunks)
            for (auto& r : c) all.push_back(std::move(r));
        return cache_.emplace(d, std::move(all)).first->second;
    }

    // exact coefficients of prod_v (local factor)^{-1} up to order B
    std::vector<Int> series(int B) {
        std::vector<Int> acc(B + 1, Int(0));
        acc[0] = 1;
        auto mul_inverse_factor = [&](u32 d, i64 a, bool good, u64 N) {
            if (static_cast<int>(d) > B) return;
            std::vector<Int> f(B + 1, Int(0));
            f[0] = 1;
            f[d] = -Int(a);
            if (good && 2 * d <= static_cast<u32>(B)) f[2 * d] += Int(N);
            std::vector<Int> g(B + 1, Int(0));
            for (int n = 0; n <= B; ++n) {
                Int s = acc[n];
                for (int k = static_cast<int>(d); k <= n; k += static_cast<int>(d))
                    if (f[k] != 0) s -= f[k] * g[n - k];
                g[n] = s;
            }
            acc = std::move(g);
        };
        for (u32 d = 1; d <= static_cast<u32>(B); ++d)
            for (const auto& r : slice(d))
                mul_inverse_factor(d, r.a_v, r.type == ReductionType::Good, r.place.norm());
        const auto& ri = infinity();
        mul_inverse_factor(1, ri.a_v, ri.type == ReductionType::Good, E_.Fq->size());
        return acc;
    }

    // stabilized integer polynomial: all coefficients above some degree D
    // vanish, with at least `window` consecutive zeros observed
    Poly<Int> l_polynomial(int B, u32 window = 3) {
        auto s = series(B);
        int last_nonzero = 0;
        for (int i = 0; i <= B; ++i)
            if (s[i] != 0) last_nonzero = i;
        if (B - last_nonzero < static_cast<int>(window)) {
            std::string msg = "no stabilization within cutoff; raw series:";
            for (int i = 0; i <= B; ++i) msg += " " + s[i].str();
            throw stabilization_error(msg);
        }
        s.resize(last_nonzero + 1);
        return Poly<Int>(std::move(s));
    }

private:
    EllipticFamily E_;
    u64 brute_threshold_;
    int threads_;
    bool isotrivial_ = false;
    std::map<u32, std::vector<LocalReduction>> cache_;
    std::optional<LocalReduction> inf_;
};

// ---------------------------------------------------------------------------
// RH verdict for the stabilized L-polynomial (weight-2 normalization:
// reciprocal roots of modulus q, zeros on Re(s) = 1)

struct EllipticVerdict {
    RHVerdict rh;
    double max_root_dev = 0.0; // | |rho| - q | / q
    bool fe_symmetric = true;  // roots closed under rho -> q^2 / rho
};

inline EllipticVerdict elliptic_rh_verdict(const Poly<Int>& L, u64 q, double tol = 1e-9) {
    RationalFunctionT rf;
    rf.num = L;
    EllipticVerdict out;
    out.rh = zeros_from_rational(rf, q, Parity::Odd, tol);
    auto roots = reciprocal_roots(L);
    double qd = static_cast<double>(q);
    for (const auto& rho : roots)
        out.max_root_dev = std::max(out.max_root_dev, std::abs(std::abs(rho) - qd) / qd);
    for (const auto& rho : roots) {
        cplx target = cplx(qd * qd, 0.0) / rho;
        bool matched = false;
        for (const auto& sig : roots)
            if (std::abs(sig - target) <= tol * qd) matched = true;
        if (!matched) out.fe_symmetric = false;
    }
    return out;
}

} // namespace ncl

#endif
