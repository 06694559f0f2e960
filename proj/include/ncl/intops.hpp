#ifndef NCL_INTOPS_HPP
#define NCL_INTOPS_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <numeric>
#include <vector>

#include "ncl/common.hpp"

namespace ncl {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int ipow(Int base, u64 e) {
    Int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline u64 upow(u64 base, u32 e) {
    u64 r = 1;
    while (e--) r *= base;
    return r;
}

inline u64 isqrt_u64(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// prime -> exponent
inline std::map<u64, u32> factor_u64(u64 n) {
    std::map<u64, u32> f;
    for (u64 d = 2; d * d <= n; ++d)
        while (n % d == 0) {
            ++f[d];
            n /= d;
        }
    if (n > 1) ++f[n];
    return f;
}

inline std::vector<u64> divisors_u64(u64 n) {
    std::vector<u64> ds;
    for (u64 d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            ds.push_back(d);
            if (d != n / d) ds.push_back(n / d);
        }
    std::sort(ds.begin(), ds.end());
    return ds;
}

inline int mobius_u64(u64 n) {
    int mu = 1;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return 0;
            mu = -mu;
        }
    if (n > 1) mu = -mu;
    return mu;
}

inline u64 totient_u64(u64 n) {
    u64 r = n;
    for (auto& [p, e] : factor_u64(n)) r = r / p * (p - 1);
    return r;
}

inline u64 powmod_u64(u64 b, u64 e, u64 m) {
    unsigned __int128 r = 1, bb = b % m;
    while (e) {
        if (e & 1) r = r * bb % m;
        bb = bb * bb % m;
        e >>= 1;
    }
    return static_cast<u64>(r);
}

// multiplicative order of a modulo m, gcd(a, m) = 1
inline u64 mult_order_u64(u64 a, u64 m) {
    if (m == 1) return 1;
    u64 lam = totient_u64(m);
    u64 ord = lam;
    for (auto& [p, e] : factor_u64(lam)) {
        for (u32 i = 0; i < e; ++i) {
            if (powmod_u64(a % m, ord / p, m) == 1)
                ord /= p;
            else
                break;
        }
    }
    return ord;
}

inline std::vector<u64> primes_up_to(u64 n) {
    std::vector<bool> sieve(n + 1, true);
    std::vector<u64> ps;
    for (u64 i = 2; i <= n; ++i) {
        if (!sieve[i]) continue;
        ps.push_back(i);
        for (u64 j = i * i; j <= n; j += i) sieve[j] = false;
    }
    return ps;
}

inline u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }
inline u64 lcm_u64(u64 a, u64 b) { return a / std::gcd(a, b) * b; }

} // namespace ncl

#endif
