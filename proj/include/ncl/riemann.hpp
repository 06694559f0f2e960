#ifndef NCL_RIEMANN_HPP
#define NCL_RIEMANN_HPP

#include "ncl/lfunction.hpp"

namespace ncl {

struct StripParams {
    double lo, hi, line;
};

// even: strip (0,1), line 1/2;  odd: strip (1/2,3/2), line 1
inline StripParams strip_parameters(Parity parity) {
    return parity == Parity::Even ? StripParams{0.0, 1.0, 0.5} : StripParams{0.5, 1.5, 1.0};
}

// classical weight-w strip (w/2, w/2+1), line (w+1)/2
inline StripParams classical_strip(u32 w) {
    return {w / 2.0, w / 2.0 + 1.0, (w + 1) / 2.0};
}

struct ZeroReport {
    double re = 0.0;
    double im = 0.0; // mod 2*pi/ln q, in [0, period)
    bool in_strip = false;
    bool on_line = false;
};

struct RHVerdict {
    Parity parity = Parity::Even;
    StripParams strip{0, 1, 0.5};
    double tol = 1e-9;
    double period = 0.0; // 2*pi / ln q
    std::vector<ZeroReport> zeros;
    std::vector<ZeroReport> poles;
    enum class Overall { Pass, Fail, Vacuous } overall = Overall::Vacuous;
};

inline const char* overall_name(RHVerdict::Overall o) {
    switch (o) {
        case RHVerdict::Overall::Pass: return "pass";
        case RHVerdict::Overall::Fail: return "fail";
        default: return "vacuous";
    }
}

namespace detail {

inline ZeroReport locate(cplx u0, double lnq, double period, const StripParams& sp,
                         double tol) {
    ZeroReport z;
    z.re = -std::log(std::abs(u0)) / lnq;
    double im = -std::arg(u0) / lnq;
    im = std::fmod(im, period);
    if (im < 0) im += period;
    z.im = im;
    z.in_strip = (z.re > sp.lo + tol) && (z.re < sp.hi - tol);
    z.on_line = std::abs(z.re - sp.line) <= tol;
    return z;
}

} // namespace detail

// Zeros (and poles) of an exact rational L-function in u = q^{-s}, mapped to
// the s-plane: q^{-s} = u0 gives Re(s) = -ln|u0|/ln q, Im(s) mod 2*pi/ln q.
inline RHVerdict zeros_from_rational(const RationalFunctionT& L, u64 q, Parity parity,
                                     double tol = 1e-9) {
    if (L.num.is_zero()) throw usage_error("zeros_from_rational: zero numerator");
    RHVerdict v;
    v.parity = parity;
    v.strip = strip_parameters(parity);
    v.tol = tol;
    double lnq = std::log(static_cast<double>(q));
    v.period = 2.0 * M_PI / lnq;
    for (const auto& u0 : poly_roots(L.num))
        v.zeros.push_back(detail::locate(u0, lnq, v.period, v.strip, tol));
    for (const auto& u0 : poly_roots(L.den))
        v.poles.push_back(detail::locate(u0, lnq, v.period, v.strip, tol));
    bool any_in_strip = false, all_on_line = true;
    for (const auto& z : v.zeros)
        if (z.in_strip) {
            any_in_strip = true;
            if (!z.on_line) all_on_line = false;
        }
    v.overall = !any_in_strip ? RHVerdict::Overall::Vacuous
                : all_on_line ? RHVerdict::Overall::Pass
                              : RHVerdict::Overall::Fail;
    return v;
}

struct EigenvalueRH {
    bool pass = true;
    double max_dev = 0.0;
    double target = 1.0;
};

// Eigenvalue magnitude check: even datum eigenvalues have modulus 1,
// odd datum eigenvalues modulus sqrt(q).
inline EigenvalueRH eigenvalue_rh(const CohomDatum& datum, double tol = 1e-9) {
    const auto* cf = std::get_if<ConstantFamilySource>(&datum.source);
    if (!cf) throw usage_error("eigenvalue_rh: constant-family datum required");
    EigenvalueRH rep;
    rep.target = datum.parity == Parity::Even ? 1.0 : std::sqrt(static_cast<double>(cf->q));
    for (const auto& b : cf->blocks)
        for (const auto& lam : b.eigenvalues) {
            double dev = std::abs(std::abs(lam) - rep.target) / rep.target;
            rep.max_dev = std::max(rep.max_dev, dev);
            if (dev > tol) rep.pass = false;
        }
    return rep;
}

} // namespace ncl

#endif
