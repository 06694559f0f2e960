#ifndef NCL_FQ_HPP
#define NCL_FQ_HPP

#include <memory>
#include <mutex>
#include <optional>
#include <sstream>

#include "ncl/intops.hpp"
#include "ncl/poly.hpp"

namespace ncl {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// Polynomials over a Field are plain coefficient vectors (element indices,
// low-to-high); the owning Field is passed to the operations.
using FqPoly = std::vector<u32>;

// A finite field F_{b^m} realized as base[x]/(modulus), where base is F_p or
// another Field.  Elements are u32 indices: the base-b digit expansion of the
// index gives the coefficient vector of the representative polynomial, so
// index arithmetic on constants agrees with the base field's own indices.
//
// Multiplicative structure (exp/log relative to a fixed generator) is built
// lazily; it powers fast mul/inv, the quadratic character, square roots and
// Frobenius orbits for the counting kernels.
class Field : public std::enable_shared_from_this<Field> {
public:
    static FieldPtr prime(u32 p);
    // F_{p^e} with the lexicographically smallest monic irreducible modulus.
    static FieldPtr make(u32 p, u32 e);
    static FieldPtr extension(FieldPtr base, FqPoly modulus);
    // degree-m extension with a deterministic modulus; prefers a primitive
    // modulus so that table construction is O(size * m)
    static FieldPtr extension_auto(FieldPtr base, u32 m);

    u32 characteristic() const { return p_; }
    u64 size() const { return q_; }
    u32 ext_degree() const { return m_; }   // over base()
    u32 abs_degree() const { return abs_deg_; } // over F_p
    FieldPtr base() const { return base_; }
    const FqPoly& modulus() const { return modulus_; }
    bool is_prime_field() const { return base_ == nullptr; }

    u32 zero() const { return 0; }
    u32 one() const { return 1; }
    // class of the adjoined variable (prime field: throws)
    u32 gen_x() const;

    u32 add(u32 a, u32 b) const;
    u32 sub(u32 a, u32 b) const;
    u32 neg(u32 a) const;
    u32 mul(u32 a, u32 b) const;
    u32 inv(u32 a) const;
    u32 pow(u32 a, u64 e) const;
    // embedding of a base-field element (constant polynomial)
    u32 from_base(u32 a) const { return a; }

    // --- multiplicative tables (built on first use) ---
    void ensure_tables() const;
    bool tables_built() const { return tables_ready_.load(); }
    u32 generator() const { ensure_tables(); return gen_; }
    i64 log_of(u32 a) const { ensure_tables(); return log_[a]; }
    u32 exp_of(u64 k) const { ensure_tables(); return exp_[k % (q_ - 1)]; }
    // quadratic character (odd characteristic): 0, +1, -1
    int chi(u32 a) const {
        if (a == 0) return 0;
        ensure_tables();
        return (log_[a] & 1) ? -1 : +1;
    }
    std::optional<u32> sqrt_of(u32 a) const;

    u64 base_size() const { return base_ ? base_->size() : p_; }
    u32 digit(u32 idx, u32 i) const;
    u32 pack(const std::vector<u32>& digits) const;
    std::vector<u32> unpack(u32 idx) const;

private:
    Field() = default;
    u32 p_ = 0;
    u64 q_ = 0;
    u32 m_ = 1;
    u32 abs_deg_ = 1;
    FieldPtr base_;
    FqPoly modulus_; // over base, monic, degree m_ (empty for prime field)

    // reduction of x^m expressed as polynomial of degree < m over base
    std::vector<u32> xm_reduct_;

    mutable std::once_flag tables_once_;
    mutable std::atomic<bool> tables_ready_{false};
    mutable std::vector<u32> exp_; // size 2(q-1)
    mutable std::vector<i64> log_; // size q, log_[0] = -1
    mutable u32 gen_ = 0;

    u32 mul_slow(u32 a, u32 b) const;      // polynomial multiplication mod modulus
    u32 mul_by_x(u32 a) const;             // shift-and-reduce
    void build_tables() const;
};

// ---------------------------------------------------------------------------
// FqPoly operations (coefficients are element indices of `F`)

inline void fq_trim(FqPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}
inline int fq_deg(const FqPoly& f) { return static_cast<int>(f.size()) - 1; }
inline bool fq_is_monic(const FqPoly& f) { return !f.empty() && f.back() == 1; }

inline FqPoly fq_add(const Field& F, const FqPoly& a, const FqPoly& b) {
    FqPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        u32 x = i < a.size() ? a[i] : 0;
        u32 y = i < b.size() ? b[i] : 0;
        r[i] = F.add(x, y);
    }
    fq_trim(r);
    return r;
}

inline FqPoly fq_sub(const Field& F, const FqPoly& a, const FqPoly& b) {
    FqPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        u32 x = i < a.size() ? a[i] : 0;
        u32 y = i < b.size() ? b[i] : 0;
        r[i] = F.sub(x, y);
    }
    fq_trim(r);
    return r;
}

inline FqPoly fq_scale(const Field& F, const FqPoly& a, u32 s) {
    FqPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], s);
    fq_trim(r);
    return r;
}

inline FqPoly fq_mul(const Field& F, const FqPoly& a, const FqPoly& b) {
    if (a.empty() || b.empty()) return {};
    FqPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            if (b[j] != 0) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    fq_trim(r);
    return r;
}

inline std::pair<FqPoly, FqPoly> fq_divrem(const Field& F, FqPoly a, const FqPoly& b) {
    if (b.empty()) throw error("fq_divrem: division by zero polynomial");
    int db = fq_deg(b);
    u32 lead_inv = F.inv(b.back());
    FqPoly q(std::max<int>(0, fq_deg(a) - db + 1), 0);
    while (fq_deg(a) >= db) {
        int k = fq_deg(a) - db;
        u32 f = F.mul(a.back(), lead_inv);
        q[k] = f;
        for (int i = 0; i <= db; ++i) a[k + i] = F.sub(a[k + i], F.mul(f, b[i]));
        fq_trim(a);
    }
    fq_trim(q);
    return {q, a};
}

inline FqPoly fq_mod(const Field& F, FqPoly a, const FqPoly& b) {
    return fq_divrem(F, std::move(a), b).second;
}

inline bool fq_divides(const Field& F, const FqPoly& d, const FqPoly& a) {
    return fq_mod(F, a, d).empty();
}

// Evaluate a polynomial over F at a point of E, where E is an extension
// built directly over F (constants embed index-identically).
inline u32 fq_eval(const Field& E, const FqPoly& f, u32 x) {
    u32 r = 0;
    for (int i = fq_deg(f); i >= 0; --i) r = E.add(E.mul(r, x), E.from_base(f[i]));
    return r;
}

// encode a polynomial as sum coeff_i * q^i (used as a deterministic sort key)
inline u64 fq_key(const Field& F, const FqPoly& f) {
    u64 k = 0;
    for (size_t i = f.size(); i-- > 0;) k = k * F.size() + f[i];
    return k;
}

inline FqPoly fq_from_key(const Field& F, u64 key, int deg) {
    FqPoly f(deg + 1);
    for (int i = 0; i <= deg; ++i) {
        f[i] = static_cast<u32>(key % F.size());
        key /= F.size();
    }
    return f;
}

// ---------------------------------------------------------------------------
// Field implementation

inline FieldPtr Field::prime(u32 p) {
    if (!is_prime_u64(p)) throw usage_error("field characteristic must be prime");
    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = p;
    f->q_ = p;
    f->m_ = 1;
    f->abs_deg_ = 1;
    return f;
}

inline u32 Field::gen_x() const {
    if (is_prime_field()) throw error("prime field has no adjoined variable");
    // x reduces mod a degree-1 modulus to its constant term's negative
    if (m_ == 1) return base_->neg(modulus_[0]);
    return static_cast<u32>(base_size());
}

inline u32 Field::digit(u32 idx, u32 i) const {
    u64 b = base_size();
    for (u32 k = 0; k < i; ++k) idx = static_cast<u32>(idx / b);
    return static_cast<u32>(idx % b);
}

inline std::vector<u32> Field::unpack(u32 idx) const {
    u64 b = base_size();
    std::vector<u32> d(m_);
    for (u32 i = 0; i < m_; ++i) {
        d[i] = static_cast<u32>(idx % b);
        idx = static_cast<u32>(idx / b);
    }
    return d;
}

inline u32 Field::pack(const std::vector<u32>& digits) const {
    u64 b = base_size();
    u64 v = 0;
    for (size_t i = digits.size(); i-- > 0;) v = v * b + digits[i];
    return static_cast<u32>(v);
}

inline u32 Field::add(u32 a, u32 b) const {
    if (is_prime_field()) {
        u64 s = static_cast<u64>(a) + b;
        return static_cast<u32>(s >= p_ ? s - p_ : s);
    }
    u64 bs = base_size();
    u64 r = 0, mult = 1;
    for (u32 i = 0; i < m_; ++i) {
        u32 da = static_cast<u32>(a % bs), db = static_cast<u32>(b % bs);
        a = static_cast<u32>(a / bs);
        b = static_cast<u32>(b / bs);
        r += static_cast<u64>(base_->add(da, db)) * mult;
        mult *= bs;
    }
    return static_cast<u32>(r);
}

inline u32 Field::neg(u32 a) const {
    if (is_prime_field()) return a == 0 ? 0 : p_ - a;
    u64 bs = base_size();
    u64 r = 0, mult = 1;
    for (u32 i = 0; i < m_; ++i) {
        r += static_cast<u64>(base_->neg(static_cast<u32>(a % bs))) * mult;
        a = static_cast<u32>(a / bs);
        mult *= bs;
    }
    return static_cast<u32>(r);
}

inline u32 Field::sub(u32 a, u32 b) const { return add(a, neg(b)); }

inline u32 Field::mul_by_x(u32 a) const {
    // multiply by the class of x: shift digits, reduce with x^m = xm_reduct_
    u64 bs = base_size();
    std::vector<u32> d = unpack(a);
    u32 top = d.empty() ? 0 : d[m_ - 1];
    u64 r = 0, mult = 1;
    for (u32 i = 0; i < m_; ++i) {
        u32 v = (i == 0) ? 0 : d[i - 1];
        if (top != 0) v = base_->add(v, base_->mul(top, xm_reduct_[i]));
        r += static_cast<u64>(v) * mult;
        mult *= bs;
    }
    return static_cast<u32>(r);
}

inline u32 Field::mul_slow(u32 a, u32 b) const {
    if (is_prime_field()) return static_cast<u32>(static_cast<u64>(a) * b % p_);
    if (a == 0 || b == 0) return 0;
    std::vector<u32> da = unpack(a), db = unpack(b);
    std::vector<u32> prod(2 * m_ - 1, 0);
    for (u32 i = 0; i < m_; ++i) {
        if (da[i] == 0) continue;
        for (u32 j = 0; j < m_; ++j)
            if (db[j] != 0) prod[i + j] = base_->add(prod[i + j], base_->mul(da[i], db[j]));
    }
    // reduce degrees >= m by repeated use of x^m = xm_reduct_
    for (u32 k = 2 * m_ - 2; k >= m_; --k) {
        u32 c = prod[k];
        if (c == 0) continue;
        prod[k] = 0;
        for (u32 i = 0; i < m_; ++i)
            if (xm_reduct_[i] != 0)
                prod[k - m_ + i] = base_->add(prod[k - m_ + i], base_->mul(c, xm_reduct_[i]));
        if (k == m_) break;
    }
    prod.resize(m_);
    return pack(prod);
}

inline u32 Field::mul(u32 a, u32 b) const {
    if (is_prime_field()) return static_cast<u32>(static_cast<u64>(a) * b % p_);
    if (a == 0 || b == 0) return 0;
    if (tables_ready_.load(std::memory_order_acquire))
        return exp_[static_cast<u64>(log_[a]) + static_cast<u64>(log_[b])];
    return mul_slow(a, b);
}

inline u32 Field::pow(u32 a, u64 e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    if (!is_prime_field() && tables_ready_.load(std::memory_order_acquire)) {
        unsigned __int128 k = static_cast<unsigned __int128>(log_[a]) * (e % (q_ - 1));
        return exp_[static_cast<u64>(k % (q_ - 1))];
    }
    u32 r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

inline u32 Field::inv(u32 a) const {
    if (a == 0) throw error("division by zero in finite field");
    if (is_prime_field()) return pow(a, p_ - 2);
    if (tables_ready_.load(std::memory_order_acquire))
        return exp_[(q_ - 1) - static_cast<u64>(log_[a])];
    return pow(a, q_ - 2);
}

inline std::optional<u32> Field::sqrt_of(u32 a) const {
    if (a == 0) return 0;
    if (p_ == 2) return pow(a, q_ / 2); // squaring is bijective
    ensure_tables();
    i64 l = log_[a];
    if (l & 1) return std::nullopt;
    return exp_[static_cast<u64>(l / 2)];
}

inline void Field::ensure_tables() const {
    std::call_once(tables_once_, [this] { build_tables(); });
}

inline void Field::build_tables() const {
    const u64 LIMIT = 1ULL << 23;
    if (q_ > LIMIT) throw budget_error("field too large for multiplicative tables");
    u64 n = q_ - 1;
    auto fac = factor_u64(n);
    auto is_primitive = [&](u32 g) {
        if (g == 0) return false;
        for (auto& [pr, e] : fac)
            if (pow(g, n / pr) == 1) return false;
        return true;
    };
    u32 g = 0;
    if (!is_prime_field() && m_ > 1 && is_primitive(gen_x())) g = gen_x();
    if (g == 0)
        for (u32 cand = 2; cand < q_; ++cand)
            if (is_primitive(cand)) {
                g = cand;
                break;
            }
    if (g == 0 && q_ == 2) g = 1;
    exp_.assign(2 * n, 0);
    log_.assign(q_, -1);
    u32 v = 1;
    bool shift_fast = (!is_prime_field() && g == gen_x() && m_ > 1);
    for (u64 k = 0; k < n; ++k) {
        exp_[k] = v;
        exp_[k + n] = v;
        log_[v] = static_cast<i64>(k);
        v = shift_fast ? mul_by_x(v) : mul_slow(v, g);
    }
    gen_ = g;
    tables_ready_.store(true, std::memory_order_release);
}

// ---------------------------------------------------------------------------
// Irreducibility and place enumeration

// Monic irreducibles over F of degree <= max_deg, by trial division against
// lower-degree irreducibles; results sorted by (degree, key).
inline std::vector<FqPoly> enumerate_irreducibles(const Field& F, u32 max_deg) {
    std::vector<FqPoly> irr;
    std::vector<std::vector<FqPoly>> by_deg(max_deg + 1);
    u64 q = F.size();
    for (u32 d = 1; d <= max_deg; ++d) {
        u64 count = upow(q, d);
        for (u64 key = 0; key < count; ++key) {
            FqPoly f = fq_from_key(F, key, static_cast<int>(d));
            f[d] = 1; // monic
            bool red = false;
            for (u32 e = 1; !red && 2 * e <= d; ++e)
                for (const auto& g : by_deg[e])
                    if (fq_divides(F, g, f)) {
                        red = true;
                        break;
                    }
            if (!red) by_deg[d].push_back(f);
        }
        for (auto& f : by_deg[d]) irr.push_back(f);
    }
    return irr;
}

inline bool is_irreducible_with(const Field& F, const FqPoly& f,
                                const std::vector<FqPoly>& lower) {
    for (const auto& g : lower)
        if (2 * g.size() <= f.size() + 1 && fq_divides(F, g, f)) return false;
    return true;
}

inline bool is_irreducible(const Field& F, const FqPoly& f) {
    if (fq_deg(f) < 1) throw usage_error("is_irreducible: constant polynomial");
    if (!fq_is_monic(f)) throw usage_error("is_irreducible: polynomial must be monic");
    u32 d = static_cast<u32>(fq_deg(f));
    if (d == 1) return true;
    return is_irreducible_with(F, f, enumerate_irreducibles(F, d / 2));
}

// (1/d) sum_{e | d} mu(d/e) q^e
inline Int count_irreducibles(u64 q, u32 d) {
    if (d < 1) throw usage_error("count_irreducibles: degree must be >= 1");
    Int s = 0;
    for (u64 e : divisors_u64(d)) s += Int(mobius_u64(d / e)) * ipow(Int(q), e);
    return s / d;
}

inline FieldPtr Field::make(u32 p, u32 e) {
    if (e < 1) throw usage_error("extension degree must be >= 1");
    auto base = prime(p);
    if (e == 1) return base;
    return extension(base, [&] {
        const Field& B = *base;
        auto lower = enumerate_irreducibles(B, e / 2);
        u64 count = upow(p, e);
        for (u64 key = 0; key < count; ++key) {
            FqPoly f = fq_from_key(B, key, static_cast<int>(e));
            f[e] = 1;
            if (is_irreducible_with(B, f, lower)) return f;
        }
        throw error("no irreducible modulus found");
    }());
}

inline FieldPtr Field::extension(FieldPtr base, FqPoly modulus) {
    fq_trim(modulus);
    if (!fq_is_monic(modulus) || fq_deg(modulus) < 1)
        throw usage_error("field modulus must be monic of degree >= 1");
    auto f = std::shared_ptr<Field>(new Field());
    f->base_ = base;
    f->p_ = base->characteristic();
    f->m_ = static_cast<u32>(fq_deg(modulus));
    f->abs_deg_ = base->abs_degree() * f->m_;
    u64 q = 1;
    for (u32 i = 0; i < f->m_; ++i) {
        q *= base->size();
        if (q > (1ULL << 31)) throw budget_error("field too large (index overflow)");
    }
    f->q_ = q;
    f->modulus_ = modulus;
    f->xm_reduct_.assign(f->m_, 0);
    for (u32 i = 0; i < f->m_; ++i) f->xm_reduct_[i] = base->neg(modulus[i]);
    return f;
}

inline FieldPtr Field::extension_auto(FieldPtr base, u32 m) {
    if (m < 1) throw usage_error("extension degree must be >= 1");
    const Field& B = *base;
    auto lower = enumerate_irreducibles(B, m / 2);
    u64 count = upow(B.size(), m);
    // smallest irreducible modulus whose root is primitive (fast tables);
    // falls back to the smallest irreducible if none is found quickly
    i64 first_irr = -1;
    for (u64 key = 0; key < count; ++key) {
        FqPoly f = fq_from_key(B, key, static_cast<int>(m));
        f[m] = 1;
        if (!is_irreducible_with(B, f, lower)) continue;
        if (first_irr < 0) first_irr = static_cast<i64>(key);
        auto E = extension(base, f);
        u64 n = E->size() - 1;
        bool prim = true;
        u32 x = E->gen_x();
        for (auto& [pr, e] : factor_u64(n))
            if (E->pow(x, n / pr) == 1) {
                prim = false;
                break;
            }
        if (prim) return E;
        if (key > static_cast<u64>(first_irr) + 4096) break;
    }
    if (first_irr < 0) throw error("no irreducible modulus found");
    FqPoly f = fq_from_key(B, static_cast<u64>(first_irr), static_cast<int>(m));
    f[m] = 1;
    return extension(base, f);
}

// ---------------------------------------------------------------------------
// Places

struct Place {
    enum class Kind { FunctionField, NumberField };
    Kind kind = Kind::FunctionField;
    u32 p = 0, e = 1;   // base field F_{p^e} (function field)
    FqPoly gen;         // monic irreducible over F_q (function field)
    u64 prime = 0;      // rational prime (number field)

    static Place function_field(u32 p, u32 e, FqPoly g) {
        Place v;
        v.kind = Kind::FunctionField;
        v.p = p;
        v.e = e;
        v.gen = std::move(g);
        return v;
    }
    static Place number_field(u64 pr) {
        Place v;
        v.kind = Kind::NumberField;
        v.prime = pr;
        return v;
    }

    u64 q() const { return upow(p, e); }
    u32 degree() const {
        return kind == Kind::FunctionField ? static_cast<u32>(gen.size() - 1) : 1;
    }
    u64 norm() const {
        return kind == Kind::FunctionField ? upow(q(), degree()) : prime;
    }
    u64 sort_key() const {
        if (kind == Kind::NumberField) return prime;
        u64 k = 0;
        for (size_t i = gen.size(); i-- > 0;) k = k * q() + gen[i];
        return k;
    }
    bool operator==(const Place& o) const {
        return kind == o.kind && p == o.p && e == o.e && gen == o.gen && prime == o.prime;
    }
    bool operator<(const Place& o) const {
        if (degree() != o.degree()) return degree() < o.degree();
        return sort_key() < o.sort_key();
    }

    std::string to_text() const {
        std::ostringstream os;
        if (kind == Kind::NumberField) {
            os << "p=" << prime;
        } else {
            os << "q=" << p << "^" << e << ";poly=";
            for (size_t i = 0; i < gen.size(); ++i) {
                if (i) os << ",";
                os << gen[i];
            }
        }
        return os.str();
    }
};

inline std::vector<Place> enumerate_places(const Field& F, u32 max_degree) {
    if (max_degree < 1) throw usage_error("enumerate_places: max_degree must be >= 1");
    u32 p = F.characteristic();
    u32 e = F.abs_degree();
    auto irr = enumerate_irreducibles(F, max_degree);
    std::vector<Place> out;
    out.reserve(irr.size());
    for (auto& f : irr) out.push_back(Place::function_field(p, e, std::move(f)));
    return out;
}

// One Frobenius orbit of elements of exact degree d, together with its place.
struct PlaceOrbit {
    Place place;
    u32 tau; // a root of place.gen inside the slice's residue field
};

struct DegreeSlice {
    FieldPtr kappa; // F_{q^d}, an extension built directly over the base
    std::vector<PlaceOrbit> orbits;
};

// All places of exact degree d of F_q(t), each with a root in a shared
// residue field; this avoids building one field per place.
inline DegreeSlice place_slice(FieldPtr base, u32 d) {
    DegreeSlice slice;
    u32 p = base->characteristic();
    u32 e = base->abs_degree();
    if (d == 1) {
        slice.kappa = base;
        for (u32 c = 0; c < base->size(); ++c) {
            FqPoly g{base->neg(c), 1};
            slice.orbits.push_back({Place::function_field(p, e, std::move(g)), c});
        }
        std::sort(slice.orbits.begin(), slice.orbits.end(),
                  [](const PlaceOrbit& a, const PlaceOrbit& b) { return a.place < b.place; });
        return slice;
    }
    auto kappa = Field::extension_auto(base, d);
    kappa->ensure_tables();
    const Field& K = *kappa;
    u64 Q = K.size();
    u64 q = base->size();
    std::vector<bool> seen(Q, false);
    std::vector<u32> proper; // maximal proper divisors of d
    for (auto& [pr, ee] : factor_u64(d)) proper.push_back(d / static_cast<u32>(pr));
    std::vector<PlaceOrbit> orbits;
    for (u64 t0 = 1; t0 < Q; ++t0) {
        if (seen[t0]) continue;
        u32 tau = static_cast<u32>(t0);
        bool sub = false;
        for (u32 dd : proper)
            if (K.pow(tau, upow(q, dd)) == tau) {
                sub = true;
                break;
            }
        if (sub) {
            seen[t0] = true;
            continue;
        }
        // collect the orbit and its minimal polynomial over F_q
        FqPoly minpoly{1}; // over kappa for now
        u32 t = tau;
        for (u32 i = 0; i < d; ++i) {
            seen[t] = true;
            FqPoly lin{K.neg(t), 1};
            minpoly = fq_mul(K, minpoly, lin);
            t = K.pow(t, q);
        }
        // coefficients must be base-field constants (index < q)
        FqPoly g(minpoly.size());
        for (size_t i = 0; i < minpoly.size(); ++i) {
            if (minpoly[i] >= q) throw error("place orbit: minimal polynomial not over base field");
            g[i] = minpoly[i];
        }
        orbits.push_back({Place::function_field(p, e, std::move(g)), tau});
    }
    std::sort(orbits.begin(), orbits.end(),
              [](const PlaceOrbit& a, const PlaceOrbit& b) { return a.place < b.place; });
    slice.kappa = kappa;
    slice.orbits = std::move(orbits);
    return slice;
}

} // namespace ncl

#endif
