#ifndef NCL_ZETA_HPP
#define NCL_ZETA_HPP

#include <Eigen/Eigenvalues>

#include "ncl/series.hpp"

namespace ncl {

// P(T)/Q(T) with integer coefficients, Q(0) = 1, gcd(P, Q) = 1.
struct RationalFunctionT {
    Poly<Int> num = Poly<Int>::one();
    Poly<Int> den = Poly<Int>::one();

    FormalPowerSeries series(int B) const { return series_of(to_rat(num), to_rat(den), B); }
    cplx eval(cplx u) const { return to_cplx(num).eval(u) / to_cplx(den).eval(u); }
    RationalFunctionT operator*(const RationalFunctionT& o) const {
        return make(to_rat(num) * to_rat(o.num), to_rat(den) * to_rat(o.den));
    }
    bool operator==(const RationalFunctionT& o) const { return num == o.num && den == o.den; }

    // reduce, normalize Q(0) = 1, check integrality
    static RationalFunctionT make(Poly<Rat> p, Poly<Rat> q) {
        if (q.is_zero()) throw error("rational function: zero denominator");
        auto g = poly_gcd(p, q);
        if (g.degree() > 0) {
            p = poly_divrem(p, g).first;
            q = poly_divrem(q, g).first;
        }
        Rat q0 = q.coeff(0);
        if (q0 == 0) throw error("rational function: denominator vanishes at 0");
        for (auto& x : p.c) x /= q0;
        for (auto& x : q.c) x /= q0;
        RationalFunctionT r;
        r.num = to_int_checked(p, "rational function numerator");
        r.den = to_int_checked(q, "rational function denominator");
        return r;
    }
};

namespace detail {

inline std::vector<cplx> companion_roots(const Poly<Rat>& p) {
    int d = p.degree();
    if (d <= 0) return {};
    std::vector<double> c(d + 1);
    for (int i = 0; i <= d; ++i) c[i] = static_cast<double>(p.c[i]);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i) M(i, d - 1) = -c[i] / c[d];
    for (int i = 1; i < d; ++i) M(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(M);
    std::vector<cplx> roots(d);
    for (int i = 0; i < d; ++i) roots[i] = es.eigenvalues()[i];
    return roots;
}

inline Poly<Rat> poly_derivative(const Poly<Rat>& p) {
    if (p.degree() < 1) return Poly<Rat>();
    std::vector<Rat> c(p.degree());
    for (int i = 1; i <= p.degree(); ++i) c[i - 1] = p.c[i] * i;
    return Poly<Rat>(std::move(c));
}

} // namespace detail

// Roots (in T) of an integer polynomial.  Square-free layers are peeled off
// exactly first, so the companion solves only ever see simple roots;
// repeated roots keep full double accuracy this way.
inline std::vector<cplx> poly_roots(const Poly<Int>& p) {
    std::vector<cplx> roots;
    Poly<Rat> cur = to_rat(p);
    while (cur.degree() > 0) {
        auto g = poly_gcd(cur, detail::poly_derivative(cur));
        auto sf = poly_divrem(cur, g).first; // square-free part
        for (auto& r : detail::companion_roots(sf)) roots.push_back(r);
        cur = g;
    }
    std::sort(roots.begin(), roots.end(), [](const cplx& a, const cplx& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

// Reciprocal roots: alpha such that (1 - alpha T) divides p.
inline std::vector<cplx> reciprocal_roots(const Poly<Int>& p) {
    auto rs = poly_roots(p);
    std::vector<cplx> out;
    out.reserve(rs.size());
    for (auto& r : rs) out.push_back(cplx(1.0, 0.0) / r);
    std::sort(out.begin(), out.end(), [](const cplx& a, const cplx& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

// The unique P/Q with deg P, deg Q <= max_total_degree matching the series;
// exact Pade-style linear solve over the rationals.
inline RationalFunctionT rational_reconstruct(const FormalPowerSeries& s,
                                              int max_total_degree) {
    int B = s.order();
    int bound = max_total_degree;
    if (bound < 0) throw usage_error("rational_reconstruct: negative degree bound");
    if (B < 2 * bound + 1)
        throw usage_error("rational_reconstruct: series order must be >= 2*bound+1");
    // unknowns q_1..q_bound;  sum_i q_i s_{n-i} = -s_n  for n = bound+1..B
    int rows = B - bound, cols = bound;
    std::vector<std::vector<Rat>> A(rows, std::vector<Rat>(cols + 1, Rat(0)));
    for (int r = 0; r < rows; ++r) {
        int n = bound + 1 + r;
        for (int i = 1; i <= cols; ++i) A[r][i - 1] = s.coeff(n - i);
        A[r][cols] = -s.coeff(n);
    }
    // exact Gaussian elimination
    std::vector<int> pivot_col(rows, -1);
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pr = -1;
        for (int r = rank; r < rows; ++r)
            if (A[r][col] != 0) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        std::swap(A[rank], A[pr]);
        Rat inv = Rat(1) / A[rank][col];
        for (int j = col; j <= cols; ++j) A[rank][j] *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || A[r][col] == 0) continue;
            Rat f = A[r][col];
            for (int j = col; j <= cols; ++j) A[r][j] -= f * A[rank][j];
        }
        pivot_col[rank] = col;
        ++rank;
    }
    for (int r = rank; r < rows; ++r)
        if (A[r][cols] != 0)
            throw reconstruction_error(
                "no rational function of the requested degree matches the series");
    std::vector<Rat> qc(cols + 1, Rat(0));
    qc[0] = 1;
    for (int r = 0; r < rank; ++r) qc[pivot_col[r] + 1] = A[r][cols];
    Poly<Rat> Q(std::move(qc));
    // P = (S * Q) truncated; all higher terms must vanish
    auto qs = FormalPowerSeries::zero(B);
    for (int i = 0; i <= std::min(B, Q.degree()); ++i) qs.c[i] = Q.coeff(i);
    auto prod = ps_mul(s, qs);
    std::vector<Rat> pc(bound + 1, Rat(0));
    for (int i = 0; i <= bound; ++i) pc[i] = prod.coeff(i);
    for (int i = bound + 1; i <= B; ++i)
        if (prod.coeff(i) != 0)
            throw reconstruction_error(
                "no rational function of the requested degree matches the series");
    auto rf = RationalFunctionT::make(Poly<Rat>(std::move(pc)), Q);
    // round trip: the reduced function reproduces every known coefficient
    auto back = rf.series(B);
    for (int i = 0; i <= B; ++i)
        if (back.coeff(i) != s.coeff(i)) throw reconstruction_error("round trip failed");
    return rf;
}

// ---------------------------------------------------------------------------
// Weight splitting

struct WeightBlock {
    u32 w = 0;
    std::optional<Poly<Int>> charpoly; // prod (1 - alpha T), exact when known
    std::vector<cplx> roots;           // reciprocal roots
    u32 beta() const { return static_cast<u32>(roots.size()); }
};

namespace detail {

// extract the maximal power of (1 - c T) dividing p exactly
inline std::pair<Poly<Int>, u32> extract_linear(Poly<Int> p, const Int& c) {
    Poly<Rat> lin(std::vector<Rat>{Rat(1), Rat(-c)});
    u32 mult = 0;
    for (;;) {
        auto [q, r] = poly_divrem(to_rat(p), lin);
        if (!r.is_zero()) break;
        bool integral = true;
        for (auto& x : q.c)
            if (boost::multiprecision::denominator(x) != 1) integral = false;
        if (!integral) break;
        p = to_int_checked(q, "extract_linear");
        ++mult;
        if (p.degree() < 1) break;
    }
    return {p, mult};
}

inline int nearest_weight(double mag, u64 q, int parity /*0 even, 1 odd*/) {
    double wreal = 2.0 * std::log(mag) / std::log(static_cast<double>(q));
    int w = static_cast<int>(std::lround(wreal));
    if ((w & 1) != parity) {
        // try the adjacent weight of the right parity
        int lo = w - 1, hi = w + 1;
        double dlo = std::abs(wreal - lo), dhi = std::abs(wreal - hi);
        w = dlo <= dhi ? lo : hi;
    }
    return w;
}

} // namespace detail

// Split numerator (odd weights) and denominator (even weights) reciprocal
// roots into weight blocks, clustering |alpha| to the nearest q^{w/2}.
inline std::vector<WeightBlock> weight_split(const RationalFunctionT& z, u64 q,
                                             double tol = 1e-6) {
    if (z.num.coeff(0) != 1 || z.den.coeff(0) != 1)
        throw ambiguous_weight_error("weight_split: zeta not normalized at T=0");
    std::map<int, WeightBlock> blocks;
    auto add_block = [&](int w, std::optional<Poly<Int>> cp, const std::vector<cplx>& roots) {
        auto& b = blocks[w];
        b.w = static_cast<u32>(w);
        if (b.roots.empty() && cp) {
            b.charpoly = cp;
        } else if (cp && b.charpoly) {
            b.charpoly = to_int_checked(to_rat(*b.charpoly) * to_rat(*cp), "weight block");
        } else {
            b.charpoly.reset();
        }
        for (auto& r : roots) b.roots.push_back(r);
    };
    auto handle = [&](const Poly<Int>& poly, int parity) {
        Poly<Int> rest = poly;
        if (parity == 0) {
            // pull out exact (1 - q^{w/2} T) factors (integer-pure even weights)
            for (int wh = 0; wh <= 40 && rest.degree() >= 1; ++wh) {
                Int c = ipow(Int(q), wh);
                if (c > (Int(1) << 62)) break;
                auto [r, mult] = detail::extract_linear(rest, c);
                if (mult > 0) {
                    Poly<Int> cp = Poly<Int>::one();
                    Poly<Int> lin(std::vector<Int>{Int(1), -c});
                    std::vector<cplx> roots;
                    for (u32 k = 0; k < mult; ++k) {
                        cp = cp * lin;
                        roots.push_back(cplx(static_cast<double>(c), 0.0));
                    }
                    add_block(2 * wh, cp, roots);
                    rest = r;
                }
            }
        }
        if (rest.degree() < 1) return;
        auto roots = reciprocal_roots(rest);
        // cluster remaining roots by magnitude
        std::map<int, std::vector<cplx>> classes;
        for (auto& a : roots) {
            double mag = std::abs(a);
            int w = detail::nearest_weight(mag, q, parity);
            double target = std::pow(static_cast<double>(q), w / 2.0);
            if (w < 0 || std::abs(mag - target) > tol * target)
                throw ambiguous_weight_error(
                    "weight_split: root magnitude matches no q^{w/2} of the right parity");
            classes[w].push_back(a);
        }
        if (classes.size() == 1) {
            add_block(classes.begin()->first, rest, classes.begin()->second);
        } else {
            for (auto& [w, rs] : classes) add_block(w, std::nullopt, rs);
        }
    };
    handle(z.den, 0);
    handle(z.num, 1);
    std::vector<WeightBlock> out;
    for (auto& [w, b] : blocks) out.push_back(std::move(b));
    return out;
}

struct RootDeviation {
    u32 w;
    cplx root;
    double rel_dev;
};

struct LocalRHReport {
    bool pass = true;
    double max_dev = 0.0;
    double tol = 0.0;
    std::vector<RootDeviation> roots;
};

// Per-root relative deviation of |alpha| from q^{w/2}.
inline LocalRHReport local_rh_check(const std::vector<WeightBlock>& blocks, u64 q,
                                    double tol = 1e-9) {
    LocalRHReport rep;
    rep.tol = tol;
    for (const auto& b : blocks)
        for (const auto& r : b.roots) {
            double target = std::pow(static_cast<double>(q), b.w / 2.0);
            double dev = std::abs(std::abs(r) - target) / target;
            rep.roots.push_back({b.w, r, dev});
            rep.max_dev = std::max(rep.max_dev, dev);
            if (dev > tol) rep.pass = false;
        }
    return rep;
}

// ---------------------------------------------------------------------------
// Structured reconstructions for smooth curves and surfaces (power sums of
// the middle cohomology read off directly from the counts).

namespace detail {

inline std::optional<Poly<Int>> charpoly_if_consistent(const std::vector<Rat>& p,
                                                       int b, u64 q, double purity_w,
                                                       int n_checks) {
    auto cp = poly_from_power_sums(p, b);
    Poly<Int> cpi;
    try {
        cpi = to_int_checked(cp, "charpoly");
    } catch (const error&) {
        return std::nullopt;
    }
    // remaining power sums must match
    auto ext = power_sums(to_rat(cpi), static_cast<int>(p.size()) - 1);
    for (size_t n = b + 1; n < p.size() && static_cast<int>(n) <= b + n_checks; ++n)
        if (ext[n] != p[n]) return std::nullopt;
    if (b > 0) {
        double target = std::pow(static_cast<double>(q), purity_w / 2.0);
        for (auto& r : reciprocal_roots(cpi))
            if (std::abs(std::abs(r) - target) > 1e-6 * target) return std::nullopt;
    }
    return cpi;
}

} // namespace detail

// Numerator P(T) of the zeta function of a smooth projective curve from its
// counts: power sums q^m + 1 - N_m, degree detected (or given via genus).
inline Poly<Int> curve_numerator_from_counts(const CountVector& cv,
                                             std::optional<u32> genus = std::nullopt) {
    int M = static_cast<int>(cv.counts.size());
    std::vector<Rat> p(M + 1, Rat(0));
    for (int m = 1; m <= M; ++m)
        p[m] = Rat(ipow(Int(cv.q), m) + 1 - cv.counts[m - 1]);
    if (genus) {
        int b = static_cast<int>(2 * *genus);
        if (b > M) throw reconstruction_error("curve: not enough counts for the genus");
        auto cp = detail::charpoly_if_consistent(p, b, cv.q, 1.0, M);
        if (!cp) throw reconstruction_error("curve: counts inconsistent with the genus");
        return *cp;
    }
    for (int b = 0; b <= M - 1; b += 2) {
        auto cp = detail::charpoly_if_consistent(p, b, cv.q, 1.0, M);
        if (cp) return *cp;
    }
    throw reconstruction_error("curve: no consistent numerator found (need more counts)");
}

inline RationalFunctionT curve_zeta(const CountVector& cv,
                                    std::optional<u32> genus = std::nullopt) {
    auto P = curve_numerator_from_counts(cv, genus);
    Poly<Rat> den = Poly<Rat>(std::vector<Rat>{Rat(1), Rat(-1)}) *
                    Poly<Rat>(std::vector<Rat>{Rat(1), Rat(-static_cast<long long>(cv.q))});
    return RationalFunctionT::make(to_rat(P), den);
}

// Middle characteristic polynomial P2(T) of a smooth projective surface with
// b1 = b3 = 0 (the shapes produced by this tool), from power sums
// N_m - 1 - q^{2m}.
inline Poly<Int> surface_middle_from_counts(const CountVector& cv,
                                            std::optional<u32> b2 = std::nullopt) {
    int M = static_cast<int>(cv.counts.size());
    std::vector<Rat> p(M + 1, Rat(0));
    for (int m = 1; m <= M; ++m)
        p[m] = Rat(cv.counts[m - 1] - 1 - ipow(Int(cv.q), 2 * m));
    if (b2) {
        int b = static_cast<int>(*b2);
        if (b > M) throw reconstruction_error("surface: not enough counts for b2");
        auto cp = detail::charpoly_if_consistent(p, b, cv.q, 2.0, M);
        if (!cp) throw reconstruction_error("surface: counts inconsistent with b2");
        return *cp;
    }
    for (int b = 0; b <= M; ++b) {
        auto cp = detail::charpoly_if_consistent(p, b, cv.q, 2.0, M);
        if (cp) return *cp;
    }
    throw reconstruction_error("surface: no consistent middle polynomial (need more counts)");
}

inline RationalFunctionT surface_zeta(const CountVector& cv,
                                      std::optional<u32> b2 = std::nullopt) {
    auto P2 = surface_middle_from_counts(cv, b2);
    Int q2 = Int(cv.q) * Int(cv.q);
    Poly<Rat> den = Poly<Rat>(std::vector<Rat>{Rat(1), Rat(-1)}) * to_rat(P2) *
                    Poly<Rat>(std::vector<Rat>{Rat(1), Rat(-q2)});
    return RationalFunctionT::make(Poly<Rat>::one(), den);
}

} // namespace ncl

#endif
