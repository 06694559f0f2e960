#ifndef NCL_VERIFY_HPP
#define NCL_VERIFY_HPP

#include <array>

#include "ncl/io.hpp"

namespace ncl {

struct SuiteResult {
    std::string name;
    bool pass = true;
    std::vector<std::string> lines;

    SuiteResult() = default;
    explicit SuiteResult(std::string n) : name(std::move(n)) {}

    void check(bool ok, const std::string& what) {
        pass = pass && ok;
        lines.push_back(std::string(ok ? "  ok   " : "  FAIL ") + what);
    }
    void note(const std::string& what) { lines.push_back("       " + what); }
};

// ---------------------------------------------------------------------------
// Standard test varieties (counts are cheap at these sizes; the run config's
// cache makes repeats free)

inline VarietySpec spec_p1(u32 q) {
    VarietySpec v;
    v.kind = VarietySpec::Kind::ProjectiveSpace;
    v.field = Field::make(q, 1);
    v.n = 1;
    return v;
}

inline VarietySpec spec_elliptic_f5() {
    VarietySpec v;
    v.kind = VarietySpec::Kind::Weierstrass;
    v.field = Field::prime(5);
    v.a4 = 1;
    v.a6 = 1;
    v.genus = 1;
    return v;
}

inline VarietySpec spec_fermat_cubic_f2() {
    VarietySpec v;
    v.kind = VarietySpec::Kind::Hypersurface;
    v.field = Field::prime(2);
    v.n = 2;
    v.terms = {{{3, 0, 0}, 1}, {{0, 3, 0}, 1}, {{0, 0, 3}, 1}};
    v.genus = 1;
    return v;
}

inline VarietySpec spec_fermat_cubic_f5() {
    VarietySpec v = spec_fermat_cubic_f2();
    v.field = Field::prime(5);
    return v;
}

inline VarietySpec spec_quadric_f3() {
    VarietySpec v;
    v.kind = VarietySpec::Kind::Hypersurface;
    v.field = Field::prime(3);
    v.n = 3;
    // xw - yz
    v.terms = {{{1, 0, 0, 1}, 1}, {{0, 1, 1, 0}, 2}};
    v.b2 = 2;
    return v;
}

inline VarietySpec spec_cubic_surface_f2() {
    VarietySpec v;
    v.kind = VarietySpec::Kind::Hypersurface;
    v.field = Field::prime(2);
    v.n = 3;
    v.terms = {{{3, 0, 0, 0}, 1}, {{0, 3, 0, 0}, 1}, {{0, 0, 3, 0}, 1}, {{0, 0, 0, 3}, 1}};
    v.b2 = 7;
    return v;
}

// ---------------------------------------------------------------------------
// Suites

inline SuiteResult suite_weight_shift(const RunConfig& cfg) {
    SuiteResult res{"weight-shift"};
    std::vector<cplx> samples = {cplx(2.0, 0.0), cplx(2.5, 0.0), cplx(3.0, 0.5),
                                 cplx(2.25, 1.0), cplx(4.0, 0.0)};
    struct Case {
        std::string name;
        VarietySpec spec;
        std::vector<Parity> parities;
    };
    std::vector<Case> cases = {
        {"P1/F2(t)", spec_p1(2), {Parity::Even}},
        {"elliptic/F5(t)", spec_elliptic_f5(), {Parity::Even, Parity::Odd}},
        {"fermat-cubic/F2(t)", spec_fermat_cubic_f2(), {Parity::Even, Parity::Odd}},
    };
    for (auto& c : cases) {
        auto rep = run_zeta(c.spec, cfg);
        for (Parity parity : c.parities) {
            auto ws = verify_weight_shift(rep.blocks, rep.counts.q, parity, samples,
                                          cfg.cutoff);
            res.check(ws.max_value_residual < cfg.tol_identity,
                      c.name + " " + parity_name(parity) + " value residual " +
                          std::to_string(ws.max_value_residual));
            res.check(ws.dirichlet_exact_match,
                      c.name + " " + parity_name(parity) +
                          " Dirichlet coefficients exact to norm " +
                          std::to_string(ws.dirichlet_norm_bound));
        }
    }
    return res;
}

namespace detail {

inline NCMotive random_motive(std::mt19937_64& rng, const GlobalBase& base, int max_atoms) {
    NCMotive m;
    m.base = base;
    int n_atoms = 1 + static_cast<int>(rng() % static_cast<u64>(max_atoms));
    for (int i = 0; i < n_atoms; ++i) {
        if (base.kind == GlobalBase::Kind::Rationals) {
            Atom a;
            a.label = "artin" + std::to_string(i);
            a.even.parity = Parity::Even;
            a.even.source = ArtinSource{static_cast<u32>(1 + rng() % 12)};
            a.odd = empty_datum(base, Parity::Odd);
            m.atoms.push_back(std::move(a));
            continue;
        }
        u64 q = base.q();
        ConstantFamilySource even_src{q, {}}, odd_src{q, {}};
        // random even part: (1-T)^i (1-qT)^j
        u32 i0 = static_cast<u32>(rng() % 3), j0 = static_cast<u32>(rng() % 3);
        Poly<Int> cp0 = Poly<Int>::one(), cp2 = Poly<Int>::one();
        for (u32 k = 0; k < i0; ++k) cp0 = cp0 * Poly<Int>({Int(1), Int(-1)});
        for (u32 k = 0; k < j0; ++k) cp2 = cp2 * Poly<Int>({Int(1), -Int(q)});
        if (cp0.degree() > 0) even_src.blocks.push_back(make_twisted_block(0, 0, cp0, q));
        if (cp2.degree() > 0) even_src.blocks.push_back(make_twisted_block(2, 1, cp2, q));
        // random odd part: Hasse-admissible quadratics 1 + aT + qT^2
        u32 nq = static_cast<u32>(rng() % 3);
        Poly<Int> cp1 = Poly<Int>::one();
        for (u32 k = 0; k < nq; ++k) {
            i64 amax = static_cast<i64>(isqrt_u64(4 * q));
            i64 a = static_cast<i64>(rng() % static_cast<u64>(2 * amax + 1)) - amax;
            cp1 = cp1 * Poly<Int>({Int(1), Int(a), Int(q)});
        }
        if (cp1.degree() > 0) odd_src.blocks.push_back(make_twisted_block(1, 0, cp1, q));
        Atom a;
        a.label = "cf" + std::to_string(i);
        a.even.parity = Parity::Even;
        a.even.source = even_src;
        a.odd.parity = Parity::Odd;
        a.odd.source = odd_src;
        m.atoms.push_back(std::move(a));
    }
    return m;
}

} // namespace detail

inline SuiteResult suite_multiplicativity(const RunConfig& cfg, int trials = 1000) {
    (void)cfg;
    SuiteResult res{"multiplicativity"};
    std::mt19937_64 rng(20240517);
    int failures = 0;
    for (int t = 0; t < trials; ++t) {
        GlobalBase base;
        if (t % 4 == 3)
            base = GlobalBase::rationals();
        else
            base = GlobalBase::function_field(std::array<u32, 3>{2, 3, 5}[t % 3]);
        auto m1 = detail::random_motive(rng, base, 2);
        auto m2 = detail::random_motive(rng, base, 2);
        auto sum = direct_sum(m1, m2);
        std::vector<Place> places;
        if (base.kind == GlobalBase::Kind::FunctionField) {
            auto F = Field::make(base.p, base.e);
            places = enumerate_places(*F, 3);
        } else {
            for (u64 p : primes_up_to(20)) places.push_back(Place::number_field(p));
        }
        for (Parity parity : {Parity::Even, Parity::Odd}) {
            for (const auto& v : places) {
                auto lf = sum.local_factor_at(parity, v);
                Poly<Rat> prod = Poly<Rat>::one();
                bool exact_ok = true;
                for (const auto& atom : sum.atoms) {
                    auto alf =
                        local_factor(parity == Parity::Even ? atom.even : atom.odd, v);
                    if (!alf) continue;
                    if (!alf->exact) {
                        exact_ok = false;
                        break;
                    }
                    prod = prod * *alf->exact;
                }
                if (!exact_ok || !lf->exact || !(*lf->exact == prod)) ++failures;
            }
        }
    }
    res.check(failures == 0, "local factor of direct sum = product of local factors, " +
                                 std::to_string(trials) + " randomized trials, " +
                                 std::to_string(failures) + " failures");
    return res;
}

inline SuiteResult suite_trace_bounds(const RunConfig& cfg) {
    SuiteResult res{"trace-bounds"};
    std::vector<std::pair<std::string, VarietySpec>> cases = {
        {"P1/F2", spec_p1(2)},
        {"elliptic/F5", spec_elliptic_f5()},
        {"fermat-cubic/F2", spec_fermat_cubic_f2()},
        {"quadric/F3", spec_quadric_f3()},
        {"cubic-surface/F2", spec_cubic_surface_f2()},
    };
    for (auto& [name, spec] : cases) {
        auto rep = run_zeta(spec, cfg);
        auto [even, odd] = tate_twist_assemble(rep.blocks, rep.counts.q);
        double beta_e = even.total_beta(), beta_o = odd.total_beta();
        auto F = Field::make(spec.field->characteristic(), spec.field->abs_degree());
        int violations = 0;
        for (const auto& v : enumerate_places(*F, 4)) {
            auto te = trace_sequence(even, v, 6);
            auto to = trace_sequence(odd, v, 6);
            for (int n = 1; n <= 6; ++n) {
                double Nn2 = std::pow(static_cast<double>(v.norm()), n / 2.0);
                if (std::abs(te.values[n - 1]) > beta_e + 1e-9) ++violations;
                if (std::abs(to.values[n - 1]) > beta_o * Nn2 + 1e-9) ++violations;
            }
        }
        res.check(violations == 0,
                  name + ": |#+| <= sum beta_even and |#-| <= sum beta_odd * N^{n/2}, "
                         "places deg <= 4, n <= 6 (" +
                      std::to_string(violations) + " violations)");
    }
    return res;
}

inline SuiteResult suite_convergence(const RunConfig& cfg) {
    SuiteResult res{"convergence"};
    auto rep = run_zeta(spec_elliptic_f5(), cfg);
    auto [even, odd] = tate_twist_assemble(rep.blocks, rep.counts.q);
    auto h = make_handle(GlobalBase::function_field(5), Parity::Odd, {odd}, 8);
    // s = 1.75: inside Re > 3/2; the trace-bound majorants of the degree
    // slices decay monotonically, and each actual increment stays below its
    // majorant and below the tail bound of the previous cutoff.  (The raw
    // increments themselves fluctuate with the trace sums.)
    std::vector<double> dom;
    bool bounded = true, tail_ok = true;
    for (int B = 2; B <= 8; ++B) {
        LSeriesHandle hb = h;
        hb.cutoff = B;
        auto ev = euler_product_eval(hb, cplx(1.75, 0.0));
        dom.push_back(ev.last_slice_dominating);
        if (ev.last_slice_increment > ev.last_slice_dominating) bounded = false;
        LSeriesHandle hprev = h;
        hprev.cutoff = B - 1;
        if (ev.last_slice_increment > tail_bound(hprev, 1.75)) tail_ok = false;
    }
    bool monotone = true;
    for (size_t i = 1; i < dom.size(); ++i)
        if (!(dom[i] < dom[i - 1])) monotone = false;
    res.check(monotone,
              "dominating log-increments at s=1.75 decrease monotonically, B=2..8");
    res.check(bounded, "each increment is within its trace-bound majorant");
    res.check(tail_ok, "each increment is within the tail bound of the previous cutoff");
    LSeriesHandle hb = h;
    hb.cutoff = 6;
    auto outside = euler_product_eval(hb, cplx(1.25, 0.0));
    res.check(outside.outside_region, "s=1.25 flagged outside the odd half-plane");
    auto inside = euler_product_eval(hb, cplx(1.75, 0.0));
    res.check(!inside.outside_region, "s=1.75 not flagged");
    return res;
}

namespace detail {

inline bool motives_equal_locally(const NCMotive& a, const NCMotive& b, int max_deg) {
    if (a.base != b.base) return false;
    std::vector<Place> places;
    if (a.base.kind == GlobalBase::Kind::FunctionField) {
        auto F = Field::make(a.base.p, a.base.e);
        places = enumerate_places(*F, static_cast<u32>(max_deg));
    } else {
        for (u64 p : primes_up_to(static_cast<u64>(max_deg))) places.push_back(Place::number_field(p));
    }
    for (Parity parity : {Parity::Even, Parity::Odd})
        for (const auto& v : places) {
            auto lf = a.local_factor_at(parity, v);
            auto rf = b.local_factor_at(parity, v);
            if (!lf->exact || !rf->exact) return false;
            if (!(*lf->exact == *rf->exact)) return false;
        }
    return true;
}

} // namespace detail

inline SuiteResult suite_cy(const RunConfig& cfg) {
    SuiteResult res{"cy"};
    struct Case {
        std::string name;
        VarietySpec spec;
        u32 n, deg;
        u32 expect_even_after;
    };
    std::vector<Case> cases = {
        {"cubic-surface/F2 (n=3,deg=3)", spec_cubic_surface_f2(), 3, 3, 8},
        {"quadric/F3 (n=3,deg=2)", spec_quadric_f3(), 3, 2, 2},
        {"fermat-cubic/F5 (n=2,deg=3)", spec_fermat_cubic_f5(), 2, 3, 2},
    };
    for (auto& c : cases) {
        GlobalBase base = GlobalBase::function_field(c.spec.field->characteristic(),
                                                     c.spec.field->abs_degree());
        auto m = motive_from_variety(c.spec, cfg, c.name);
        u32 k = c.n - c.deg + 1;
        auto t = cy_summand(m, c.n, c.deg);
        u32 even_count = 0;
        for (const auto& atom : t.atoms) even_count += atom.even.total_beta();
        res.check(even_count == c.expect_even_after,
                  c.name + ": even datum has " + std::to_string(even_count) +
                      " eigenvalues after removing " + std::to_string(k) + " unit atoms");
        auto recombined = direct_sum(t, zeta_power(base, k));
        res.check(detail::motives_equal_locally(m, recombined, 3),
                  c.name + ": L_even(perf) = L_even(T_dg) * zeta^" + std::to_string(k) +
                      " place-by-place exactly (deg <= 3)");
    }
    // boundary: removing zero atoms is the identity
    auto m = motive_from_variety(spec_fermat_cubic_f5(), cfg, "fermat");
    auto t = cy_summand(m, 2, 3);
    res.check(detail::motives_equal_locally(m, t, 2), "n-deg+1 = 0 leaves the motive unchanged");
    return res;
}

inline SuiteResult suite_gluing(const RunConfig& cfg) {
    SuiteResult res{"gluing"};
    GlobalBase f2 = GlobalBase::function_field(2);
    GlobalBase f5 = GlobalBase::function_field(5);
    auto p1 = motive_from_variety(spec_p1(2), cfg, "P1");
    auto glued = gluing(p1, p1);
    res.check(detail::motives_equal_locally(glued, zeta_power(f2, 4), 3),
              "glue(P1, P1): L_even = zeta^4 place-by-place (deg <= 3)");
    auto e = motive_from_variety(spec_elliptic_f5(), cfg, "E");
    auto point = zeta_atom(f5, "point");
    auto ge = gluing(e, point);
    bool odd_match = true;
    auto F5 = Field::make(5, 1);
    for (const auto& v : enumerate_places(*F5, 3)) {
        auto a = ge.local_factor_at(Parity::Odd, v);
        auto b = e.local_factor_at(Parity::Odd, v);
        if (!(*a->exact == *b->exact)) odd_match = false;
    }
    res.check(odd_match, "glue(E, point): odd part = odd part of E");
    NCMotive empty;
    empty.base = f5;
    res.check(detail::motives_equal_locally(gluing(e, empty), e, 3), "glue(m, 0) = m");
    res.check(detail::motives_equal_locally(gluing(e, point), direct_sum(e, point), 3),
              "gluing and direct sum have identical L-functions");
    return res;
}

// independent oracle at unramified p: cycle lengths of multiplication by p
// on Z/nZ give the degrees of the irreducible factors of x^n - 1 over F_p
inline Poly<Int> regular_rep_factor_oracle(u32 n, u64 p) {
    std::vector<bool> seen(n, false);
    Poly<Int> out = Poly<Int>::one();
    for (u32 r = 0; r < n; ++r) {
        if (seen[r]) continue;
        u32 len = 0;
        u64 cur = r;
        while (!seen[cur]) {
            seen[cur] = true;
            cur = (cur * p) % n;
            ++len;
        }
        std::vector<Int> f(len + 1, Int(0));
        f[0] = 1;
        f[len] = -1;
        out = out * Poly<Int>(std::move(f));
    }
    return out;
}

inline SuiteResult suite_finite1(const RunConfig& cfg, u32 n_max = 12, u64 prime_bound = 100) {
    (void)cfg;
    SuiteResult res{"finite1"};
    auto primes = primes_up_to(prime_bound);
    for (u32 n = 1; n <= n_max; ++n) {
        auto m = group_algebra_atom(GlobalBase::rationals(), n);
        bool even_ok = true, oracle_ok = true, odd_ok = true;
        for (u64 p : primes) {
            Place v = Place::number_field(p);
            auto lf = m.local_factor_at(Parity::Even, v);
            // structural identity: product of cyclotomic Dedekind factors
            Poly<Int> prod = Poly<Int>::one();
            for (u64 d : divisors_u64(n))
                prod = prod * dedekind_local_factor(CyclotomicField{static_cast<u32>(d)}, p);
            if (!(*lf->exact == to_rat(prod))) even_ok = false;
            // independent oracle at unramified primes
            if (n % p != 0) {
                if (!(*lf->exact == to_rat(regular_rep_factor_oracle(n, p)))) oracle_ok = false;
            }
            auto lo = m.local_factor_at(Parity::Odd, v);
            if (!(lo->approx == Poly<cplx>::one())) odd_ok = false;
        }
        res.check(even_ok && oracle_ok && odd_ok,
                  "Q[Z/" + std::to_string(n) + "]: L_even = prod_{d|n} zeta_{Q(zeta_d)} " +
                      "at all p <= " + std::to_string(prime_bound) +
                      (n > 1 ? ", x^n-1 orbit oracle at unramified p" : "") + ", L_odd = 1");
    }
    return res;
}

inline SuiteResult suite_hpd(const RunConfig& cfg) {
    SuiteResult res{"hpd"};
    GlobalBase f5 = GlobalBase::function_field(5);
    auto C = motive_from_variety(spec_elliptic_f5(), cfg, "C");
    u32 a = 2, b = 3;
    auto mXL = direct_sum(C, zeta_power(f5, a));
    auto mYL = direct_sum(C, zeta_power(f5, b));
    auto rep = hpd_check(mXL, mYL, a, b, 3, cfg.tol_identity);
    res.check(rep.pass && rep.max_residual == 0.0,
              "synthetic pair C + zeta^a vs C + zeta^b passes exactly");
    // perturbed eigenvalue: localized failure report
    auto Cbad = C;
    auto* cf = std::get_if<ConstantFamilySource>(&Cbad.atoms[0].odd.source);
    if (cf && !cf->blocks.empty()) {
        Poly<Int> tweaked = cf->blocks[0].charpoly;
        tweaked.c[1] += 1;
        cf->blocks[0] = make_twisted_block(1, 0, tweaked, 5);
    }
    auto mBad = direct_sum(Cbad, zeta_power(f5, a));
    auto repBad = hpd_check(mBad, mYL, a, b, 3, cfg.tol_identity);
    res.check(!repBad.pass && !repBad.failures.empty(),
              "perturbed eigenvalue fails with localized place report (" +
                  std::to_string(repBad.failures.size()) + " places)");
    // quadric/quadric pair from reconstructed counts
    auto Q = motive_from_variety(spec_quadric_f3(), cfg, "quadric");
    auto q1 = direct_sum(Q, zeta_power(GlobalBase::function_field(3), 1));
    auto q2 = direct_sum(zeta_power(GlobalBase::function_field(3), 1), Q);
    auto repQ = hpd_check(q1, q2, 1, 1, 3, cfg.tol_identity);
    res.check(repQ.pass, "quadric/quadric pair from counts passes (residual " +
                             std::to_string(repQ.max_residual) + ")");
    return res;
}

inline std::vector<std::string> suite_names() {
    return {"weight-shift", "multiplicativity", "trace-bounds", "convergence",
            "cy",           "gluing",           "finite1",      "hpd"};
}

inline SuiteResult run_suite(const std::string& name, const RunConfig& cfg) {
    if (name == "weight-shift") return suite_weight_shift(cfg);
    if (name == "multiplicativity") return suite_multiplicativity(cfg);
    if (name == "trace-bounds") return suite_trace_bounds(cfg);
    if (name == "convergence") return suite_convergence(cfg);
    if (name == "cy") return suite_cy(cfg);
    if (name == "gluing") return suite_gluing(cfg);
    if (name == "finite1") return suite_finite1(cfg);
    if (name == "hpd") return suite_hpd(cfg);
    throw usage_error("unknown verification suite: " + name);
}

} // namespace ncl

#endif
