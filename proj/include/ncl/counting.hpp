#ifndef NCL_COUNTING_HPP
#define NCL_COUNTING_HPP

#include "ncl/fq.hpp"

namespace ncl {

// N_m = #X(F_{q^m}) for m = 1..B
struct CountVector {
    u64 q = 0;
    std::vector<Int> counts;
};

struct Monomial {
    std::vector<u32> exps; // one exponent per coordinate x_0..x_n
    u32 coeff = 1;         // element index in F_q
};

// Homogeneous hypersurface in P^n over F_q.
struct HypersurfaceSpec {
    FieldPtr field;
    u32 ambient_n = 2;
    std::vector<Monomial> terms;

    u32 degree() const {
        u32 d = 0;
        for (u32 e : terms.at(0).exps) d += e;
        return d;
    }
    void validate() const {
        if (terms.empty()) throw usage_error("hypersurface: zero polynomial");
        u32 d = degree();
        for (const auto& t : terms) {
            if (t.exps.size() != ambient_n + 1)
                throw usage_error("hypersurface: monomial arity mismatch");
            u32 s = 0;
            for (u32 e : t.exps) s += e;
            if (s != d) throw usage_error("hypersurface: polynomial not homogeneous");
        }
    }
};

// (q^{m(n+1)} - 1) / (q^m - 1)
inline Int count_projective_space(u64 q, u32 n, u32 m) {
    if (m < 1) throw usage_error("count_projective_space: m must be >= 1");
    Int qm = ipow(Int(q), m);
    return (ipow(qm, n + 1) - 1) / (qm - 1);
}

namespace detail {

inline u32 eval_terms(const Field& E, const std::vector<Monomial>& terms,
                      const std::vector<u32>& x) {
    u32 acc = 0;
    for (const auto& t : terms) {
        u32 v = E.from_base(t.coeff);
        for (size_t j = 0; j < x.size(); ++j) {
            u32 e = t.exps[j];
            if (e == 0) continue;
            if (x[j] == 0) {
                v = 0;
                break;
            }
            for (u32 k = 0; k < e; ++k) v = E.mul(v, x[j]);
        }
        acc = E.add(acc, v);
    }
    return acc;
}

} // namespace detail

// Exact point count of a hypersurface over F_{q^m} by exhaustive scan of
// normalized projective representatives.
inline Int count_hypersurface(const HypersurfaceSpec& spec, u32 m,
                              u64 budget = 100000000ULL, int threads = 0) {
    spec.validate();
    if (m < 1) throw usage_error("count_hypersurface: m must be >= 1");
    FieldPtr E = (m == 1) ? spec.field : Field::extension_auto(spec.field, m);
    E->ensure_tables();
    const Field& F = *E;
    u64 Q = F.size();
    u32 n = spec.ambient_n;
    Int total_pts = count_projective_space(Q, n, 1);
    if (total_pts > Int(budget)) throw budget_error("counting budget exceeded");

    Int found = 0;
    for (u32 lead = 0; lead <= n; ++lead) {
        u32 free_coords = n - lead;
        u64 block = 1;
        for (u32 i = 0; i < free_coords; ++i) block *= Q;
        auto chunk_counts = parallel_chunks<u64>(
            block, threads, std::function<u64(u64, u64)>([&](u64 lo, u64 hi) {
                std::vector<u32> x(n + 1, 0);
                x[lead] = 1;
                u64 cnt = 0;
                for (u64 idx = lo; idx < hi; ++idx) {
                    u64 rest = idx;
                    for (u32 j = lead + 1; j <= n; ++j) {
                        x[j] = static_cast<u32>(rest % Q);
                        rest /= Q;
                    }
                    if (detail::eval_terms(F, spec.terms, x) == 0) ++cnt;
                }
                return cnt;
            }));
        for (u64 c : chunk_counts) found += c;
    }
    return found;
}

// Long Weierstrass coefficients a1, a2, a3, a4, a6 over kappa.
struct WeierstrassCoeffs {
    FieldPtr kappa;
    u32 a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;

    static WeierstrassCoeffs short_form(FieldPtr kappa, u32 A, u32 B) {
        WeierstrassCoeffs w;
        w.kappa = std::move(kappa);
        w.a4 = A;
        w.a6 = B;
        return w;
    }
};

namespace detail {

// absolute trace to F_2 (characteristic 2 only)
inline u32 abs_trace2(const Field& E, u32 a) {
    u32 t = a, s = a;
    for (u32 i = 1; i < E.abs_degree(); ++i) {
        s = E.mul(s, s);
        t = E.add(t, s);
    }
    return t;
}

struct WPointCounts {
    Int all = 0;      // projective points, singular included
    Int singular = 0; // singular points on the curve
};

inline WPointCounts weierstrass_scan(const Field& E, const WeierstrassCoeffs& w,
                                     u64 budget) {
    u64 Q = E.size();
    if (Int(Q) > Int(budget)) throw budget_error("counting budget exceeded");
    u32 a1 = E.from_base(w.a1), a2 = E.from_base(w.a2), a3 = E.from_base(w.a3),
        a4 = E.from_base(w.a4), a6 = E.from_base(w.a6);
    WPointCounts out;
    u64 affine = 0;
    auto rhs = [&](u32 x) {
        u32 x2 = E.mul(x, x);
        u32 v = E.mul(x2, x);
        v = E.add(v, E.mul(a2, x2));
        v = E.add(v, E.mul(a4, x));
        return E.add(v, a6);
    };
    if (E.characteristic() != 2) {
        E.ensure_tables();
        u32 four = E.add(E.add(E.one(), E.one()), E.add(E.one(), E.one()));
        for (u64 xi = 0; xi < Q; ++xi) {
            u32 x = static_cast<u32>(xi);
            u32 c = E.add(E.mul(a1, x), a3); // y-line term
            u32 g = E.add(E.mul(four, rhs(x)), E.mul(c, c));
            affine += 1 + E.chi(g);
        }
    } else {
        for (u64 xi = 0; xi < Q; ++xi) {
            u32 x = static_cast<u32>(xi);
            u32 c = E.add(E.mul(a1, x), a3);
            u32 d = rhs(x);
            if (c == 0) {
                affine += 1; // squaring is bijective
            } else {
                u32 u = E.mul(d, E.mul(E.inv(c), E.inv(c)));
                affine += (abs_trace2(E, u) == 0) ? 2 : 0;
            }
        }
    }
    out.all = Int(affine) + 1; // [0:1:0]

    // singular points on the curve: both partials vanish
    // F = y^2 + a1 x y + a3 y - x^3 - a2 x^2 - a4 x - a6
    u32 two = E.add(E.one(), E.one());
    u32 three = E.add(two, E.one());
    for (u64 xi = 0; xi < Q; ++xi) {
        u32 x = static_cast<u32>(xi);
        std::vector<u32> ys;
        u32 c = E.add(E.mul(a1, x), a3);
        if (E.characteristic() != 2) {
            // F_y = 2y + a1 x + a3 = 0
            ys.push_back(E.mul(E.neg(c), E.inv(two)));
        } else {
            if (c != 0) continue; // F_y = a1 x + a3 != 0
            auto s = E.sqrt_of(rhs(x));
            if (s) ys.push_back(*s);
        }
        for (u32 y : ys) {
            u32 fy2 = E.add(E.mul(y, y), E.add(E.mul(E.mul(a1, x), y), E.mul(a3, y)));
            if (E.sub(fy2, rhs(x)) != 0) continue; // not on the curve
            u32 fx = E.sub(E.mul(a1, y),
                           E.add(E.mul(three, E.mul(x, x)),
                                 E.add(E.mul(E.mul(two, a2), x), a4)));
            if (fx == 0) out.singular += 1;
        }
    }
    return out;
}

} // namespace detail

// Projective points on the Weierstrass cubic over the degree-m extension of
// kappa; include_singular = false counts nonsingular points only.
inline Int count_weierstrass_points(const WeierstrassCoeffs& w, bool include_singular,
                                    u32 m, u64 budget = 100000000ULL) {
    if (m < 1) throw usage_error("count_weierstrass_points: m must be >= 1");
    FieldPtr E = (m == 1) ? w.kappa : Field::extension_auto(w.kappa, m);
    auto res = detail::weierstrass_scan(*E, w, budget);
    return include_singular ? res.all : res.all - res.singular;
}

// Affine solutions of y^2 = f(x) over the degree-m extension of kappa
// (odd characteristic); shared kernel for hyperelliptic oracles.
inline Int count_y2_equals_f(FieldPtr kappa, const FqPoly& f, u32 m,
                             u64 budget = 100000000ULL) {
    if (kappa->characteristic() == 2)
        throw usage_error("count_y2_equals_f: needs odd characteristic");
    FieldPtr E = (m == 1) ? kappa : Field::extension_auto(kappa, m);
    E->ensure_tables();
    u64 Q = E->size();
    if (Int(Q) > Int(budget)) throw budget_error("counting budget exceeded");
    u64 total = 0;
    for (u64 xi = 0; xi < Q; ++xi)
        total += 1 + E->chi(fq_eval(*E, f, static_cast<u32>(xi)));
    return Int(total);
}

// Partial smoothness certificate: no common projective zero of the
// polynomial and its partial derivatives over F_{q^m}, all m <= max_ext.
inline bool smoothness_probe(const HypersurfaceSpec& spec, u32 max_ext,
                             u64 budget = 100000000ULL, int threads = 0) {
    spec.validate();
    if (max_ext < 1) throw usage_error("smoothness_probe: max_ext must be >= 1");
    u32 p = spec.field->characteristic();
    u32 n = spec.ambient_n;
    // partial derivative monomial lists over F_q
    std::vector<std::vector<Monomial>> partials(n + 1);
    for (u32 j = 0; j <= n; ++j)
        for (const auto& t : spec.terms) {
            u32 e = t.exps[j];
            if (e == 0) continue;
            u32 c = 0;
            for (u32 k = 0; k < e % p; ++k) c = spec.field->add(c, t.coeff);
            if (c == 0) continue;
            Monomial d = t;
            d.coeff = c;
            d.exps[j] -= 1;
            partials[j].push_back(d);
        }
    for (u32 m = 1; m <= max_ext; ++m) {
        FieldPtr E = (m == 1) ? spec.field : Field::extension_auto(spec.field, m);
        E->ensure_tables();
        const Field& F = *E;
        u64 Q = F.size();
        Int total_pts = count_projective_space(Q, n, 1);
        if (total_pts > Int(budget)) throw budget_error("counting budget exceeded");
        std::atomic<bool> singular{false};
        for (u32 lead = 0; lead <= n && !singular.load(); ++lead) {
            u32 free_coords = n - lead;
            u64 block = 1;
            for (u32 i = 0; i < free_coords; ++i) block *= Q;
            parallel_chunks<int>(
                block, threads, std::function<int(u64, u64)>([&](u64 lo, u64 hi) {
                    std::vector<u32> x(n + 1, 0);
                    x[lead] = 1;
                    for (u64 idx = lo; idx < hi && !singular.load(); ++idx) {
                        u64 rest = idx;
                        for (u32 j = lead + 1; j <= n; ++j) {
                            x[j] = static_cast<u32>(rest % Q);
                            rest /= Q;
                        }
                        bool all_zero = detail::eval_terms(F, spec.terms, x) == 0;
                        for (u32 j = 0; j <= n && all_zero; ++j)
                            if (detail::eval_terms(F, partials[j], x) != 0) all_zero = false;
                        if (all_zero) singular.store(true);
                    }
                    return 0;
                }));
        }
        if (singular.load()) return false;
    }
    return true;
}

} // namespace ncl

#endif
