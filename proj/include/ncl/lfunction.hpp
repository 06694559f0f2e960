#ifndef NCL_LFUNCTION_HPP
#define NCL_LFUNCTION_HPP

#include <limits>
#include <map>
#include <variant>

#include "ncl/artin.hpp"
#include "ncl/zeta.hpp"

namespace ncl {

enum class Parity { Even, Odd };
inline const char* parity_name(Parity p) { return p == Parity::Even ? "even" : "odd"; }

// The global field the places live in.
struct GlobalBase {
    enum class Kind { FunctionField, Rationals };
    Kind kind = Kind::FunctionField;
    u32 p = 0, e = 1; // F_q(t), q = p^e

    static GlobalBase function_field(u32 p, u32 e = 1) { return {Kind::FunctionField, p, e}; }
    static GlobalBase rationals() { return {Kind::Rationals, 0, 1}; }
    u64 q() const { return upow(p, e); }
    bool operator==(const GlobalBase& o) const {
        return kind == o.kind && p == o.p && e == o.e;
    }
    bool operator!=(const GlobalBase& o) const { return !(*this == o); }
    std::string name() const {
        return kind == Kind::Rationals ? "Q" : "F" + std::to_string(q()) + "(t)";
    }
};

// One weight block after the weight normalization: untwisted reciprocal
// roots alpha (exact charpoly prod(1 - alpha T)) plus the twist exponent,
// so the normalized eigenvalues are alpha / q^shift.
struct TwistedBlock {
    u32 w = 0;
    u32 shift = 0;
    Poly<Int> charpoly = Poly<Int>::one();
    std::vector<cplx> eigenvalues; // twisted (alpha / q^shift), cached

    u32 beta() const { return static_cast<u32>(charpoly.degree()); }
};

inline TwistedBlock make_twisted_block(u32 w, u32 shift, Poly<Int> charpoly, u64 q) {
    TwistedBlock b;
    b.w = w;
    b.shift = shift;
    b.charpoly = std::move(charpoly);
    double scale = std::pow(static_cast<double>(q), static_cast<double>(shift));
    for (auto& a : reciprocal_roots(b.charpoly)) b.eigenvalues.push_back(a / scale);
    return b;
}

struct ConstantFamilySource {
    u64 q = 0;
    std::vector<TwistedBlock> blocks;
};

struct ExplicitLocalSource {
    // local polynomial in x = N^{-s}, constant term 1, per supported place;
    // unlisted places carry the trivial factor 1
    std::vector<std::pair<Place, Poly<cplx>>> factors;
};

struct ArtinSource {
    u32 d = 1; // splitting rule of Q(zeta_d)
};

// Parity-graded local-factor data: the computational stand-in for the
// even/odd cohomology of one atom.
struct CohomDatum {
    Parity parity = Parity::Even;
    std::variant<ConstantFamilySource, ExplicitLocalSource, ArtinSource> source =
        ConstantFamilySource{};
    std::vector<Place> excluded; // S_X

    bool is_excluded(const Place& v) const {
        for (const auto& x : excluded)
            if (x == v) return true;
        return false;
    }
    u32 total_beta() const {
        if (auto* cf = std::get_if<ConstantFamilySource>(&source)) {
            u32 b = 0;
            for (const auto& bl : cf->blocks) b += bl.beta();
            return b;
        }
        if (auto* ex = std::get_if<ExplicitLocalSource>(&source)) {
            u32 b = 0;
            for (const auto& [v, f] : ex->factors)
                b = std::max<u32>(b, f.degree() >= 0 ? f.degree() : 0);
            return b;
        }
        auto* ar = std::get_if<ArtinSource>(&source);
        return static_cast<u32>(totient_u64(ar->d));
    }
};

inline CohomDatum trivial_datum(Parity parity = Parity::Even) {
    CohomDatum d;
    d.parity = parity;
    ConstantFamilySource cf;
    cf.q = 0; // any base; fixed when attached to a handle
    cf.blocks.push_back(TwistedBlock{0, 0, Poly<Int>({Int(1), Int(-1)}), {cplx(1.0, 0.0)}});
    d.source = cf;
    return d;
}

// ---------------------------------------------------------------------------
// Weight normalization (Tate twist by w/2, resp. (w-1)/2)

inline std::pair<CohomDatum, CohomDatum>
tate_twist_assemble(const std::vector<WeightBlock>& blocks, u64 q) {
    ConstantFamilySource even_src{q, {}}, odd_src{q, {}};
    for (const auto& b : blocks) {
        if (!b.charpoly)
            throw error("tate_twist_assemble: weight block lacks exact data");
        u32 shift = (b.w % 2 == 0) ? b.w / 2 : (b.w - 1) / 2;
        auto tb = make_twisted_block(b.w, shift, *b.charpoly, q);
        (b.w % 2 == 0 ? even_src : odd_src).blocks.push_back(std::move(tb));
    }
    CohomDatum even, odd;
    even.parity = Parity::Even;
    even.source = even_src;
    odd.parity = Parity::Odd;
    odd.source = odd_src;
    return {even, odd};
}

// ---------------------------------------------------------------------------
// Local factors

struct LocalFactor {
    std::optional<Poly<Rat>> exact; // present for constant-family / Artin data
    Poly<cplx> approx;              // always present, constant term 1
};

namespace detail {

// prod_j (1 - mu_j^d x) for the twisted block at a degree-d place, exactly:
// power sums of mu^d are p_{dk}(alpha) / q^{shift*d*k}.
inline Poly<Rat> block_local_factor(const TwistedBlock& b, u64 q, u32 d) {
    int beta = static_cast<int>(b.beta());
    if (beta == 0) return Poly<Rat>::one();
    auto p = power_sums(to_rat(b.charpoly), beta * static_cast<int>(d));
    Int qsd = ipow(Int(q), static_cast<u64>(b.shift) * d); // q^{shift*d}
    std::vector<Rat> P(beta + 1, Rat(0));
    Rat scale(1);
    for (int k = 1; k <= beta; ++k) {
        scale *= Rat(qsd);
        P[k] = p[static_cast<size_t>(k) * d] / scale;
    }
    return poly_from_power_sums(P, beta);
}

} // namespace detail

// Local factor of a datum at a place; nullopt = excluded (skip signal).
inline std::optional<LocalFactor> local_factor(const CohomDatum& datum, const Place& v) {
    if (datum.is_excluded(v)) return std::nullopt;
    LocalFactor out;
    if (const auto* cf = std::get_if<ConstantFamilySource>(&datum.source)) {
        if (v.kind != Place::Kind::FunctionField)
            throw base_mismatch_error("constant family datum needs a function-field place");
        Poly<Rat> f = Poly<Rat>::one();
        for (const auto& b : cf->blocks)
            f = f * detail::block_local_factor(b, v.q(), v.degree());
        out.exact = f;
        out.approx = to_cplx(f);
        return out;
    }
    if (const auto* ar = std::get_if<ArtinSource>(&datum.source)) {
        if (v.kind != Place::Kind::NumberField)
            throw base_mismatch_error("Artin datum needs a rational prime");
        auto f = dedekind_local_factor(CyclotomicField{ar->d}, v.prime);
        out.exact = to_rat(f);
        out.approx = to_cplx(f);
        return out;
    }
    const auto& ex = std::get<ExplicitLocalSource>(datum.source);
    for (const auto& [pl, f] : ex.factors)
        if (pl == v) {
            out.approx = f;
            return out;
        }
    // unlisted places carry the trivial factor, which is exact
    out.exact = Poly<Rat>::one();
    out.approx = Poly<cplx>::one();
    return out;
}

// Value of the local factor at x = N_v^{-s}, from the cached complex
// eigenvalues; avoids exact arithmetic in evaluation loops.
inline std::optional<cplx> local_factor_value(const CohomDatum& datum, const Place& v,
                                              cplx x) {
    if (datum.is_excluded(v)) return std::nullopt;
    if (const auto* cf = std::get_if<ConstantFamilySource>(&datum.source)) {
        if (v.kind != Place::Kind::FunctionField)
            throw base_mismatch_error("constant family datum needs a function-field place");
        cplx val(1.0, 0.0);
        double d = static_cast<double>(v.degree());
        for (const auto& b : cf->blocks)
            for (const auto& mu : b.eigenvalues)
                val *= cplx(1.0, 0.0) - std::pow(mu, d) * x;
        return val;
    }
    if (const auto* ar = std::get_if<ArtinSource>(&datum.source)) {
        if (v.kind != Place::Kind::NumberField)
            throw base_mismatch_error("Artin datum needs a rational prime");
        cplx val(1.0, 0.0);
        for (u32 f : cyclotomic_splitting(ar->d, v.prime))
            val *= cplx(1.0, 0.0) - std::pow(x, static_cast<double>(f));
        return val;
    }
    const auto& ex = std::get<ExplicitLocalSource>(datum.source);
    for (const auto& [pl, f] : ex.factors)
        if (pl == v) return f.eval(x);
    return cplx(1.0, 0.0);
}

// ---------------------------------------------------------------------------
// Trace sequences  #_{(+/-, v, n)}

struct TraceSequence {
    Place place;
    Parity parity = Parity::Even;
    std::vector<cplx> values; // n = 1..n_max
};

// n * [x^n] log(1/f)
template <class T>
std::vector<T> traces_from_factor(const Poly<T>& f, int n_max) {
    // series h with h*f = f' gives (log 1/f)' = -h; traces_n = -n*(-h_{n-1})/n
    std::vector<T> h(n_max, T(0));
    for (int n = 0; n < n_max; ++n) {
        T s = T(n + 1) * f.coeff(n + 1);
        for (int k = 1; k <= n; ++k) s -= f.coeff(k) * h[n - k];
        h[n] = s;
    }
    std::vector<T> tr(n_max + 1, T(0));
    for (int n = 1; n <= n_max; ++n) tr[n] = -h[n - 1];
    return tr;
}

inline TraceSequence trace_sequence(const CohomDatum& datum, const Place& v, int n_max) {
    auto lf = local_factor(datum, v);
    if (!lf) throw usage_error("trace_sequence: excluded place");
    TraceSequence ts;
    ts.place = v;
    ts.parity = datum.parity;
    if (lf->exact) {
        auto tr = traces_from_factor(*lf->exact, n_max);
        for (int n = 1; n <= n_max; ++n)
            ts.values.push_back(cplx(static_cast<double>(tr[n]), 0.0));
    } else {
        auto tr = traces_from_factor(lf->approx, n_max);
        for (int n = 1; n <= n_max; ++n) ts.values.push_back(tr[n]);
    }
    return ts;
}

// ---------------------------------------------------------------------------
// Series handle: truncated Euler product + Dirichlet expansion + closed form

struct LSeriesHandle {
    GlobalBase base;
    Parity parity = Parity::Even;
    std::vector<CohomDatum> data; // the L-function is the product over these
    int cutoff = 6;               // max place degree (F_q(t)) / max prime (Q)
    std::optional<RationalFunctionT> closed_form; // in u = q^{-s}

    void validate() const {
        for (const auto& d : data) {
            if (d.parity != parity)
                throw usage_error("series handle: datum parity mismatch");
            if (std::holds_alternative<ArtinSource>(d.source) &&
                base.kind != GlobalBase::Kind::Rationals)
                throw base_mismatch_error("Artin atom over a function field");
            if (std::holds_alternative<ConstantFamilySource>(d.source) &&
                base.kind != GlobalBase::Kind::FunctionField)
                throw base_mismatch_error("constant family over Q");
        }
    }
    u32 total_beta() const {
        u32 b = 0;
        for (const auto& d : data) b += d.total_beta();
        return b;
    }
};

// Enumerated places are memoized per base field; the sorted list for a
// smaller cutoff is a prefix of the list for a larger one.
inline std::vector<Place> handle_places(const GlobalBase& base, int cutoff) {
    if (base.kind == GlobalBase::Kind::FunctionField) {
        static std::mutex mu;
        static std::map<std::pair<u32, u32>, std::pair<u32, std::vector<Place>>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto& entry = cache[{base.p, base.e}];
        if (entry.first < static_cast<u32>(cutoff)) {
            auto F = Field::make(base.p, base.e);
            entry = {static_cast<u32>(cutoff),
                     enumerate_places(*F, static_cast<u32>(cutoff))};
        }
        std::vector<Place> out;
        for (const auto& v : entry.second) {
            if (v.degree() > static_cast<u32>(cutoff)) break;
            out.push_back(v);
        }
        return out;
    }
    std::vector<Place> out;
    for (u64 p : primes_up_to(static_cast<u64>(cutoff))) out.push_back(Place::number_field(p));
    return out;
}

// Combined local factor over all data of the handle (exact when possible).
inline std::optional<LocalFactor> handle_local_factor(const LSeriesHandle& h, const Place& v) {
    Poly<Rat> ex = Poly<Rat>::one();
    Poly<cplx> ap = Poly<cplx>::one();
    bool exact_ok = true, any = false;
    for (const auto& d : h.data) {
        auto lf = local_factor(d, v);
        if (!lf) continue; // excluded in this datum: inertia-invariant factor is trivial
        any = true;
        ap = ap * lf->approx;
        if (lf->exact && exact_ok)
            ex = ex * *lf->exact;
        else
            exact_ok = false;
    }
    (void)any;
    LocalFactor out;
    if (exact_ok) out.exact = ex;
    out.approx = ap;
    return out;
}

// Tail bound for the log of the omitted factors beyond the cutoff, following
// the trace bounds (even: |#| <= beta, odd: |#| <= beta N^{n/2}) and the
// comparison with the degree-counting zeta.  Infinite outside the half-plane.
inline double tail_bound(const LSeriesHandle& h, double sigma) {
    double beta = static_cast<double>(h.total_beta());
    double sp = (h.parity == Parity::Even) ? sigma : sigma - 0.5;
    if (h.base.kind == GlobalBase::Kind::FunctionField) {
        double q = static_cast<double>(h.base.q());
        if (std::pow(q, 1.0 - sp) >= 1.0) return std::numeric_limits<double>::infinity();
        double acc = 0.0;
        for (int d = h.cutoff + 1; d < 100000; ++d) {
            double r = std::pow(q, -sp * d);
            if (r >= 1.0) return std::numeric_limits<double>::infinity();
            double term = (std::pow(q, d) / d) * (-std::log1p(-r));
            acc += term;
            if (term < 1e-18 * (acc + 1e-300) || term < 1e-300) break;
        }
        return beta * acc;
    }
    if (sp <= 1.0) return std::numeric_limits<double>::infinity();
    double acc = 0.0;
    u64 N0 = std::max<u64>(2 * static_cast<u64>(h.cutoff), 100000);
    for (u64 n = static_cast<u64>(h.cutoff) + 1; n <= N0; ++n) {
        double r = std::pow(static_cast<double>(n), -sp);
        acc += -std::log1p(-r);
    }
    // integral tail with -log(1-x) <= x / (1 - x0)
    double x0 = std::pow(static_cast<double>(N0), -sp);
    acc += std::pow(static_cast<double>(N0), 1.0 - sp) / ((sp - 1.0) * (1.0 - x0));
    return beta * acc;
}

struct PoleReport {
    Place place;
    cplx factor_value;
};

struct EulerEval {
    cplx value{1.0, 0.0};
    double last_slice_increment = 0.0; // sum of |log L_v| over the final degree slice
    double last_slice_dominating = 0.0; // trace-bound majorant of that slice sum
    double tail = 0.0;                  // computed tail bound (inf outside region)
    bool outside_region = false;
    std::vector<PoleReport> poles;
};

// Truncated Euler product at s, with fixed place ordering and compensated
// summation of logs (principal branch per factor).
inline EulerEval euler_product_eval(const LSeriesHandle& h, cplx s) {
    h.validate();
    EulerEval out;
    auto places = handle_places(h.base, h.cutoff);
    double beta = static_cast<double>(h.total_beta());
    double sp = (h.parity == Parity::Even) ? s.real() : s.real() - 0.5;
    Kahan<double> re, im;
    double last_slice = 0.0, last_dom = 0.0;
    u64 cur_slice = 0;
    Kahan<double> slice_abs, slice_dom;
    auto flush_slice = [&]() {
        last_slice = slice_abs.value();
        last_dom = slice_dom.value();
        slice_abs = {};
        slice_dom = {};
    };
    for (const auto& v : places) {
        u64 slice_key = (h.base.kind == GlobalBase::Kind::FunctionField) ? v.degree() : v.prime;
        if (slice_key != cur_slice) {
            if (cur_slice != 0) flush_slice();
            cur_slice = slice_key;
        }
        double lnN = std::log(static_cast<double>(v.norm()));
        cplx x = std::exp(-s * lnN);
        cplx val(1.0, 0.0);
        for (const auto& d : h.data)
            if (auto lv = local_factor_value(d, v, x)) val *= *lv;
        if (std::abs(val) < 1e-300) {
            out.poles.push_back({v, val});
            continue;
        }
        cplx t = -std::log(val);
        re.add(t.real());
        im.add(t.imag());
        slice_abs.add(std::abs(t));
        double r = std::pow(static_cast<double>(v.norm()), -sp);
        slice_dom.add(r < 1.0 ? beta * (-std::log1p(-r))
                              : std::numeric_limits<double>::infinity());
    }
    flush_slice();
    out.value = std::exp(cplx(re.value(), im.value()));
    out.last_slice_increment = last_slice;
    out.last_slice_dominating = last_dom;
    out.tail = tail_bound(h, s.real());
    double edge = (h.parity == Parity::Even) ? 1.0 : 1.5;
    out.outside_region = !(s.real() > edge);
    return out;
}

// ---------------------------------------------------------------------------
// Dirichlet expansion

// Multiplicative coefficients b_I indexed by monic polynomials (encoded via
// fq_key) or positive integers, up to the norm bound.
template <class Coeff>
struct DirichletCoefficientsT {
    GlobalBase base;
    u64 norm_bound = 0;
    std::map<u64, Coeff> entries; // key -> b_I (function field: fq_key of I)
};

namespace detail {

template <class Coeff>
std::vector<Coeff> inverse_series(const Poly<Coeff>& f, int order) {
    std::vector<Coeff> g(order + 1, Coeff(0));
    g[0] = Coeff(1);
    for (int n = 1; n <= order; ++n) {
        Coeff s(0);
        for (int k = 1; k <= n; ++k) s += f.coeff(k) * g[n - k];
        g[n] = -s;
    }
    return g;
}

template <class Coeff>
Poly<Coeff> factor_as(const LocalFactor& lf);

template <>
inline Poly<Rat> factor_as<Rat>(const LocalFactor& lf) {
    if (!lf.exact) throw error("exact Dirichlet expansion needs exact local factors");
    return *lf.exact;
}
template <>
inline Poly<cplx> factor_as<cplx>(const LocalFactor& lf) {
    return lf.approx;
}

} // namespace detail

template <class Coeff>
DirichletCoefficientsT<Coeff> dirichlet_expand_as(const LSeriesHandle& h, u64 norm_bound) {
    h.validate();
    if (norm_bound < 1) throw usage_error("dirichlet_expand: norm bound must be >= 1");
    DirichletCoefficientsT<Coeff> out;
    out.base = h.base;
    out.norm_bound = norm_bound;
    bool ff = h.base.kind == GlobalBase::Kind::FunctionField;
    u64 q = ff ? h.base.q() : 0;
    auto Fq = ff ? Field::make(h.base.p, h.base.e) : nullptr;

    u32 max_deg = 0;
    if (ff) {
        while (upow(q, max_deg + 1) <= norm_bound) ++max_deg;
    }
    std::vector<Place> places;
    if (ff) {
        if (max_deg >= 1) places = handle_places(h.base, static_cast<int>(max_deg));
    } else {
        for (u64 p : primes_up_to(norm_bound)) places.push_back(Place::number_field(p));
    }

    // multiplicative build-up; function-field entries are bucketed by degree
    // so each place only touches the indices it can still extend
    struct Entry {
        FqPoly poly; // function field index polynomial
        u64 n = 1;   // number field index
        Coeff b;
    };
    if (ff) {
        std::vector<std::vector<Entry>> by_deg(max_deg + 1);
        by_deg[0].push_back({FqPoly{1}, 1, Coeff(1)});
        for (const auto& v : places) {
            u32 d = v.degree();
            if (d > max_deg) continue;
            auto lf = handle_local_factor(h, v);
            int rmax = static_cast<int>(max_deg / d);
            auto a = detail::inverse_series<Coeff>(detail::factor_as<Coeff>(*lf), rmax);
            // powers of the place generator
            std::vector<FqPoly> gen_pow(rmax + 1);
            gen_pow[0] = {1};
            for (int r = 1; r <= rmax; ++r) gen_pow[r] = fq_mul(*Fq, gen_pow[r - 1], v.gen);
            std::vector<size_t> pre_size(max_deg + 1);
            for (u32 dd = 0; dd <= max_deg; ++dd) pre_size[dd] = by_deg[dd].size();
            for (u32 dd = 0; dd <= max_deg; ++dd) {
                for (size_t i = 0; i < pre_size[dd]; ++i) {
                    for (int r = 1; dd + static_cast<u32>(r) * d <= max_deg; ++r) {
                        const Entry& e = by_deg[dd][i];
                        by_deg[dd + r * d].push_back(
                            {fq_mul(*Fq, e.poly, gen_pow[r]), 1, e.b * a[r]});
                    }
                }
            }
        }
        for (auto& bucket : by_deg)
            for (auto& e : bucket) out.entries[fq_key(*Fq, e.poly)] = e.b;
        return out;
    }
    std::vector<Entry> entries;
    entries.push_back({{}, 1, Coeff(1)});
    for (const auto& v : places) {
        auto lf = handle_local_factor(h, v);
        u64 Nv = v.norm();
        int rmax = 0;
        {
            u64 acc = Nv;
            while (acc <= norm_bound) {
                ++rmax;
                if (acc > norm_bound / Nv) break;
                acc *= Nv;
            }
        }
        if (rmax < 1) continue;
        auto a = detail::inverse_series<Coeff>(detail::factor_as<Coeff>(*lf), rmax);
        size_t base_count = entries.size();
        for (size_t i = 0; i < base_count; ++i) {
            u64 in = entries[i].n;
            Coeff ib = entries[i].b;
            u64 pr = 1;
            for (int r = 1; r <= rmax; ++r) {
                if (pr > norm_bound / Nv) break;
                pr *= Nv;
                if (in > norm_bound / pr) break;
                entries.push_back({{}, in * pr, ib * a[r]});
            }
        }
    }
    for (auto& e : entries) out.entries[e.n] = e.b;
    return out;
}

inline DirichletCoefficientsT<Rat> dirichlet_expand_exact(const LSeriesHandle& h, u64 bound) {
    return dirichlet_expand_as<Rat>(h, bound);
}
inline DirichletCoefficientsT<cplx> dirichlet_expand(const LSeriesHandle& h, u64 bound) {
    return dirichlet_expand_as<cplx>(h, bound);
}

// ---------------------------------------------------------------------------
// Exact closed form for constant families over F_q(t) (affine places):
// prod over twisted eigenvalues mu of 1/(1 - q mu u), u = q^{-s}; excluded
// places contribute their local factor to the numerator.
inline RationalFunctionT closed_form_constant_family(const CohomDatum& datum, u64 q) {
    const auto* cf = std::get_if<ConstantFamilySource>(&datum.source);
    if (!cf) throw usage_error("closed form: constant-family datum required");
    Poly<Rat> den = Poly<Rat>::one();
    for (const auto& b : cf->blocks) {
        // prod_j (1 - q (alpha_j / q^shift) u) = charpoly( q^{1-shift} u )
        Rat factor = Rat(Int(q)) / Rat(ipow(Int(q), b.shift));
        den = den * to_rat(b.charpoly).scale_var(factor);
    }
    Poly<Rat> num = Poly<Rat>::one();
    for (const auto& v : datum.excluded) {
        auto lf = local_factor(CohomDatum{datum.parity, datum.source, {}}, v);
        // substitute x = u^{deg v}
        Poly<Rat> sub;
        std::vector<Rat> cs((lf->exact->degree()) * v.degree() + 1, Rat(0));
        for (int k = 0; k <= lf->exact->degree(); ++k)
            cs[static_cast<size_t>(k) * v.degree()] = lf->exact->coeff(k);
        num = num * Poly<Rat>(std::move(cs));
    }
    return RationalFunctionT::make(num, den);
}

// Build a handle for a list of data over a base, with the closed form
// attached when every datum is an unexcluded constant family.
inline LSeriesHandle make_handle(GlobalBase base, Parity parity,
                                 std::vector<CohomDatum> data, int cutoff) {
    LSeriesHandle h;
    h.base = base;
    h.parity = parity;
    h.data = std::move(data);
    h.cutoff = cutoff;
    h.validate();
    if (base.kind == GlobalBase::Kind::FunctionField) {
        bool all_cf = true;
        for (auto& d : h.data)
            if (!std::holds_alternative<ConstantFamilySource>(d.source)) all_cf = false;
        if (all_cf && !h.data.empty()) {
            RationalFunctionT prod;
            for (auto& d : h.data) prod = prod * closed_form_constant_family(d, base.q());
            h.closed_form = prod;
        }
    }
    return h;
}

// ---------------------------------------------------------------------------
// Convergence scan over (s, cutoff) grids; descriptive only

struct ConvergenceRow {
    double s_re = 0.0;
    int B = 0;
    cplx partial{1.0, 0.0};
    double log_increment = 0.0;   // sum of |log L_v| over the last degree slice
    double dominating = 0.0;      // trace-bound majorant of that slice
    double tail = 0.0;
    bool outside_region = false;
};

inline std::vector<ConvergenceRow> convergence_scan(const LSeriesHandle& h,
                                                    const std::vector<double>& s_grid,
                                                    const std::vector<int>& B_grid) {
    if (s_grid.empty() || B_grid.empty())
        throw usage_error("convergence_scan: grids must be nonempty");
    std::vector<ConvergenceRow> rows;
    for (double sr : s_grid) {
        for (int B : B_grid) {
            LSeriesHandle hb = h;
            hb.cutoff = B;
            auto ev = euler_product_eval(hb, cplx(sr, 0.0));
            rows.push_back({sr, B, ev.value, ev.last_slice_increment,
                            ev.last_slice_dominating, ev.tail, ev.outside_region});
        }
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Weight-shift comparison (noncommutative vs shifted classical product)

struct WeightShiftReport {
    double max_value_residual = 0.0;
    bool dirichlet_exact_match = true;
    u64 dirichlet_norm_bound = 0;
};

// Classical L_w at shifted argument: product over places of
// 1/prod_j (1 - alpha_j^d N^{-(s + shift)}), built from untwisted blocks.
inline cplx classical_product_value(const std::vector<WeightBlock>& blocks, u64 q,
                                    Parity parity, cplx s, int cutoff,
                                    const GlobalBase& base) {
    (void)q;
    Kahan<double> re, im;
    auto places = handle_places(base, cutoff);
    for (const auto& b : blocks) {
        if ((b.w % 2 == 0) != (parity == Parity::Even)) continue;
        if (!b.charpoly) throw error("classical product: weight block lacks exact data");
        u32 shift = (b.w % 2 == 0) ? b.w / 2 : (b.w - 1) / 2;
        cplx sw = s + cplx(static_cast<double>(shift), 0.0);
        auto roots = reciprocal_roots(*b.charpoly);
        for (const auto& v : places) {
            double lnN = std::log(static_cast<double>(v.norm()));
            cplx x = std::exp(-sw * lnN);
            cplx val(1.0, 0.0);
            for (const auto& a : roots) {
                cplx ad = std::pow(a, static_cast<double>(v.degree()));
                val *= (cplx(1.0, 0.0) - ad * x);
            }
            cplx t = -std::log(val);
            re.add(t.real());
            im.add(t.imag());
        }
    }
    return std::exp(cplx(re.value(), im.value()));
}

inline WeightShiftReport verify_weight_shift(const std::vector<WeightBlock>& blocks, u64 q,
                                             Parity parity,
                                             const std::vector<cplx>& s_samples, int B) {
    GlobalBase base = GlobalBase::function_field(static_cast<u32>(q));
    auto [even, odd] = tate_twist_assemble(blocks, q);
    CohomDatum datum = (parity == Parity::Even) ? even : odd;
    auto h = make_handle(base, parity, {datum}, B);
    WeightShiftReport rep;
    for (const auto& s : s_samples) {
        auto nc = euler_product_eval(h, s);
        auto cl = classical_product_value(blocks, q, parity, s, B, base);
        rep.max_value_residual = std::max(rep.max_value_residual, std::abs(nc.value - cl));
    }
    // exact Dirichlet comparison: NC expansion vs convolved shifted classical
    u64 bound = upow(q, static_cast<u32>(B));
    rep.dirichlet_norm_bound = bound;
    auto nc_coeffs = dirichlet_expand_exact(h, bound);
    // classical side: expand each weight separately at shift, then convolve
    auto Fq = Field::make(base.p, base.e);
    std::map<u64, Rat> acc;
    acc[fq_key(*Fq, FqPoly{1})] = Rat(1);
    for (const auto& b : blocks) {
        if ((b.w % 2 == 0) != (parity == Parity::Even)) continue;
        u32 shift = (b.w % 2 == 0) ? b.w / 2 : (b.w - 1) / 2;
        // datum with this single block, *untwisted*
        ConstantFamilySource src{q, {make_twisted_block(b.w, 0, *b.charpoly, q)}};
        CohomDatum d0;
        d0.parity = parity;
        d0.source = src;
        auto hw = make_handle(base, parity, {d0}, B);
        auto cw = dirichlet_expand_exact(hw, bound);
        // shift (b_I -> b_I / N(I)^{shift}) and convolve, bucketed by degree
        u32 max_deg = 0;
        while (upow(q, max_deg + 1) <= bound) ++max_deg;
        auto bucketize = [&](const std::map<u64, Rat>& m) {
            std::vector<std::vector<std::pair<FqPoly, Rat>>> buckets(max_deg + 1);
            for (auto& [key, val] : m) {
                u32 deg = 0;
                u64 k = key;
                while (k >= Fq->size()) {
                    k /= Fq->size();
                    ++deg;
                }
                if (deg <= max_deg)
                    buckets[deg].push_back({fq_from_key(*Fq, key, static_cast<int>(deg)), val});
            }
            return buckets;
        };
        auto ab = bucketize(acc);
        std::vector<std::vector<std::pair<FqPoly, Rat>>> sb(max_deg + 1);
        for (auto& [key, val] : cw.entries) {
            u32 deg = 0;
            u64 k = key;
            while (k >= Fq->size()) {
                k /= Fq->size();
                ++deg;
            }
            if (deg <= max_deg)
                sb[deg].push_back({fq_from_key(*Fq, key, static_cast<int>(deg)),
                                   val / Rat(ipow(Int(upow(q, deg)), shift))});
        }
        std::map<u64, Rat> next;
        for (u32 da = 0; da <= max_deg; ++da)
            for (u32 db = 0; da + db <= max_deg; ++db)
                for (auto& [pa, va] : ab[da])
                    for (auto& [pb, vb] : sb[db])
                        next[fq_key(*Fq, fq_mul(*Fq, pa, pb))] += va * vb;
        acc = std::move(next);
    }
    for (auto& [key, val] : nc_coeffs.entries) {
        auto it = acc.find(key);
        Rat cv = (it == acc.end()) ? Rat(0) : it->second;
        if (cv != val) rep.dirichlet_exact_match = false;
    }
    for (auto& [key, val] : acc) {
        auto it = nc_coeffs.entries.find(key);
        Rat nv = (it == nc_coeffs.entries.end()) ? Rat(0) : it->second;
        if (nv != val) rep.dirichlet_exact_match = false;
    }
    return rep;
}

} // namespace ncl

#endif
