#ifndef NCL_SERIES_HPP
#define NCL_SERIES_HPP

#include "ncl/counting.hpp"
#include "ncl/poly.hpp"

namespace ncl {

// Truncated formal power series with exact rational coefficients;
// coefficients 0..order are meaningful.
struct FormalPowerSeries {
    std::vector<Rat> c; // size order+1
    int order() const { return static_cast<int>(c.size()) - 1; }
    Rat coeff(int k) const { return (k >= 0 && k <= order()) ? c[k] : Rat(0); }

    static FormalPowerSeries zero(int B) {
        FormalPowerSeries s;
        s.c.assign(B + 1, Rat(0));
        return s;
    }
    static FormalPowerSeries one(int B) {
        auto s = zero(B);
        s.c[0] = 1;
        return s;
    }
};

inline FormalPowerSeries ps_mul(const FormalPowerSeries& a, const FormalPowerSeries& b) {
    int B = std::min(a.order(), b.order());
    auto r = FormalPowerSeries::zero(B);
    for (int i = 0; i <= B; ++i) {
        if (a.c[i] == 0) continue;
        for (int j = 0; i + j <= B; ++j)
            if (b.c[j] != 0) r.c[i + j] += a.c[i] * b.c[j];
    }
    return r;
}

inline FormalPowerSeries ps_add(const FormalPowerSeries& a, const FormalPowerSeries& b) {
    int B = std::min(a.order(), b.order());
    auto r = FormalPowerSeries::zero(B);
    for (int i = 0; i <= B; ++i) r.c[i] = a.coeff(i) + b.coeff(i);
    return r;
}

// 1/f, f(0) != 0
inline FormalPowerSeries ps_inverse(const FormalPowerSeries& f) {
    if (f.coeff(0) == 0) throw error("ps_inverse: constant term is zero");
    int B = f.order();
    auto g = FormalPowerSeries::zero(B);
    g.c[0] = Rat(1) / f.c[0];
    for (int n = 1; n <= B; ++n) {
        Rat s(0);
        for (int k = 1; k <= n; ++k) s += f.coeff(k) * g.c[n - k];
        g.c[n] = -s / f.c[0];
    }
    return g;
}

// log f with f(0) = 1, via (log f)' = f'/f
inline FormalPowerSeries ps_log(const FormalPowerSeries& f) {
    if (f.coeff(0) != 1) throw error("ps_log: constant term must be 1");
    int B = f.order();
    auto r = FormalPowerSeries::zero(B);
    // h = f'/f, h_n determined by h*f = f'
    std::vector<Rat> h(std::max(0, B), Rat(0));
    for (int n = 0; n < B; ++n) {
        Rat s = Rat(n + 1) * f.coeff(n + 1);
        for (int k = 1; k <= n; ++k) s -= f.coeff(k) * h[n - k];
        h[n] = s;
    }
    for (int n = 1; n <= B; ++n) r.c[n] = h[n - 1] / n;
    return r;
}

// exp f with f(0) = 0, via h' = f' h
inline FormalPowerSeries ps_exp(const FormalPowerSeries& f) {
    if (f.coeff(0) != 0) throw error("ps_exp: constant term must be 0");
    int B = f.order();
    auto h = FormalPowerSeries::zero(B);
    h.c[0] = 1;
    for (int n = 1; n <= B; ++n) {
        Rat s(0);
        for (int k = 1; k <= n; ++k) s += Rat(k) * f.coeff(k) * h.c[n - k];
        h.c[n] = s / n;
    }
    return h;
}

// Z(T) = exp(sum_m N_m T^m / m), truncated at the number of counts supplied.
inline FormalPowerSeries zeta_from_counts(const CountVector& counts) {
    if (counts.counts.empty()) throw usage_error("zeta_from_counts: no counts");
    int B = static_cast<int>(counts.counts.size());
    auto f = FormalPowerSeries::zero(B);
    for (int m = 1; m <= B; ++m) f.c[m] = Rat(counts.counts[m - 1]) / m;
    return ps_exp(f);
}

inline FormalPowerSeries series_of(const Poly<Rat>& num, const Poly<Rat>& den, int B) {
    auto n = FormalPowerSeries::zero(B);
    for (int i = 0; i <= std::min(B, num.degree()); ++i) n.c[i] = num.coeff(i);
    auto d = FormalPowerSeries::zero(B);
    for (int i = 0; i <= std::min(B, den.degree()); ++i) d.c[i] = den.coeff(i);
    return ps_mul(n, ps_inverse(d));
}

} // namespace ncl

#endif
