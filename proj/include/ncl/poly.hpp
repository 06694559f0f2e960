#ifndef NCL_POLY_HPP
#define NCL_POLY_HPP

#include <algorithm>
#include <vector>

#include "ncl/intops.hpp"

namespace ncl {

// Dense univariate polynomial, coefficients low-to-high.  The zero
// polynomial has an empty coefficient vector and degree -1.
template <class T>
struct Poly {
    std::vector<T> c;

    Poly() = default;
    explicit Poly(std::vector<T> cs) : c(std::move(cs)) { trim(); }
    static Poly one() { return Poly({T(1)}); }
    static Poly monomial(int k, T coeff = T(1)) {
        std::vector<T> v(k + 1, T(0));
        v[k] = coeff;
        return Poly(std::move(v));
    }

    void trim() {
        while (!c.empty() && c.back() == T(0)) c.pop_back();
    }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    T coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c.size())) ? c[k] : T(0);
    }

    bool operator==(const Poly& o) const { return c == o.c; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator+(const Poly& o) const {
        std::vector<T> r(std::max(c.size(), o.c.size()), T(0));
        for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
        for (size_t i = 0; i < o.c.size(); ++i) r[i] += o.c[i];
        return Poly(std::move(r));
    }
    Poly operator-(const Poly& o) const {
        std::vector<T> r(std::max(c.size(), o.c.size()), T(0));
        for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
        for (size_t i = 0; i < o.c.size(); ++i) r[i] -= o.c[i];
        return Poly(std::move(r));
    }
    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly();
        std::vector<T> r(c.size() + o.c.size() - 1, T(0));
        for (size_t i = 0; i < c.size(); ++i)
            for (size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
        return Poly(std::move(r));
    }
    Poly operator*(const T& s) const {
        std::vector<T> r = c;
        for (auto& x : r) x *= s;
        return Poly(std::move(r));
    }
    Poly operator-() const { return *this * T(-1); }

    template <class U>
    U eval(const U& x) const {
        U r(0);
        for (int i = degree(); i >= 0; --i) r = r * x + U(c[i]);
        return r;
    }

    // p(s*T) -- exact variable rescale
    Poly scale_var(const T& s) const {
        Poly r = *this;
        T f(1);
        for (size_t i = 0; i < r.c.size(); ++i) {
            r.c[i] *= f;
            f *= s;
        }
        r.trim();
        return r;
    }
};

// Quotient/remainder for field coefficients (Rat, cplx).
template <class T>
std::pair<Poly<T>, Poly<T>> poly_divrem(const Poly<T>& a, const Poly<T>& b) {
    if (b.is_zero()) throw error("poly_divrem: division by zero polynomial");
    Poly<T> q, r = a;
    int db = b.degree();
    T lead = b.c[db];
    std::vector<T> qc(std::max(0, a.degree() - db + 1), T(0));
    while (r.degree() >= db) {
        int k = r.degree() - db;
        T f = r.c[r.degree()] / lead;
        qc[k] = f;
        for (int i = 0; i <= db; ++i) r.c[k + i] -= f * b.c[i];
        r.trim();
    }
    q = Poly<T>(std::move(qc));
    return {q, r};
}

// Monic gcd over a field.
template <class T>
Poly<T> poly_gcd(Poly<T> a, Poly<T> b) {
    while (!b.is_zero()) {
        auto [q, r] = poly_divrem(a, b);
        a = b;
        b = r;
    }
    if (!a.is_zero()) {
        T lead = a.c[a.degree()];
        for (auto& x : a.c) x /= lead;
    }
    return a;
}

inline Poly<Rat> to_rat(const Poly<Int>& p) {
    std::vector<Rat> c(p.c.begin(), p.c.end());
    return Poly<Rat>(std::move(c));
}

inline Poly<cplx> to_cplx(const Poly<Int>& p) {
    std::vector<cplx> c;
    c.reserve(p.c.size());
    for (auto& x : p.c) c.emplace_back(static_cast<double>(x), 0.0);
    return Poly<cplx>(std::move(c));
}

inline Poly<cplx> to_cplx(const Poly<Rat>& p) {
    std::vector<cplx> c;
    c.reserve(p.c.size());
    for (auto& x : p.c) c.emplace_back(static_cast<double>(x), 0.0);
    return Poly<cplx>(std::move(c));
}

// Exact integer polynomial from a rational one; throws if any
// denominator is nontrivial.
inline Poly<Int> to_int_checked(const Poly<Rat>& p, const char* what) {
    std::vector<Int> c;
    c.reserve(p.c.size());
    for (auto& x : p.c) {
        if (boost::multiprecision::denominator(x) != 1)
            throw error(std::string(what) + ": non-integral coefficient");
        c.push_back(boost::multiprecision::numerator(x));
    }
    return Poly<Int>(std::move(c));
}

// Power sums p_n = sum alpha_i^n of the reciprocal roots of
// C(T) = prod (1 - alpha_i T), C given by its coefficients (c_0 = 1).
inline std::vector<Rat> power_sums(const Poly<Rat>& charpoly, int n_max) {
    int deg = charpoly.degree();
    std::vector<Rat> p(n_max + 1, Rat(0));
    for (int n = 1; n <= n_max; ++n) {
        Rat s(0);
        for (int k = 1; k < n && k <= deg; ++k) s += charpoly.coeff(k) * p[n - k];
        if (n <= deg)
            p[n] = -Rat(n) * charpoly.coeff(n) - s;
        else
            p[n] = -s;
    }
    return p;
}

// Inverse direction: from power sums P_1..P_k of a multiset of size beta,
// rebuild prod (1 - mu_j x) (Newton's identities).
inline Poly<Rat> poly_from_power_sums(const std::vector<Rat>& P, int beta) {
    std::vector<Rat> f(beta + 1, Rat(0));
    f[0] = 1;
    for (int k = 1; k <= beta; ++k) {
        Rat s(0);
        for (int i = 1; i <= k; ++i) s += P[i] * f[k - i];
        f[k] = -s / k;
    }
    return Poly<Rat>(std::move(f));
}

} // namespace ncl

#endif
