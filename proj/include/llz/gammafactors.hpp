#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "llz/satake.hpp"
#include "llz/testfns.hpp"

namespace llz {

// Gamma'/Gamma for Re x > 0: recurrence up to Re >= 10, then the Stirling series.
inline cplx digamma(cplx x) {
    if (!(x.real() > 0.0))
        throw std::domain_error("digamma: Re x must be positive");
    cplx shift = 0.0;
    while (x.real() < 10.0) {
        shift -= 1.0 / x;
        x += 1.0;
    }
    cplx inv = 1.0 / x, inv2 = inv * inv;
    // psi(x) ~ log x - 1/(2x) - sum B_{2n}/(2n x^{2n})
    cplx s = std::log(x) - 0.5 * inv;
    static const double b[] = {1.0 / 12, -1.0 / 120, 1.0 / 252, -1.0 / 240,
                               1.0 / 132, -691.0 / 32760, 1.0 / 12, -3617.0 / 8160};
    cplx t = inv2;
    for (double c : b) {
        s -= c * t;
        t *= inv2;
    }
    return s + shift;
}

struct ArchimedeanParams {
    FamilyTag family;
    int k = 0;
    double t_phi = 0.0;
    std::vector<cplx> mu;  // closed under conjugation, in each family's customary form

    // Arguments of the digamma terms at the central point: 1/2 plus the
    // Gamma_R shift of each archimedean factor.  The degree-4 list stores the
    // shifts themselves; the degree-6 list already stores shift + 1/2.
    std::vector<cplx> psi_args() const {
        std::vector<cplx> out = mu;
        if (family == FamilyTag::PhiF)
            for (auto& z : out) z += 0.5;
        return out;
    }
};

// mu lists: phi x f -> (k +- 1)/2 +- i t; phi x sym2 f -> k +- 1/2 +- i t and 3/2 +- i t
inline ArchimedeanParams mu_params(FamilyTag family, int k, double t_phi) {
    if (k % 2 != 0) throw std::domain_error("mu_params: k must be even");
    ArchimedeanParams P;
    P.family = family;
    P.k = k;
    P.t_phi = t_phi;
    if (family == FamilyTag::PhiF) {
        for (double a : {(k - 1) / 2.0, (k + 1) / 2.0})
            for (double s : {1.0, -1.0}) P.mu.emplace_back(a, s * t_phi);
    } else if (family == FamilyTag::PhiSym2F) {
        for (double a : {k - 0.5, k + 0.5, 1.5}) {
            P.mu.emplace_back(a, t_phi);
            P.mu.emplace_back(a, -t_phi);
        }
    } else {
        throw std::domain_error("mu_params: family without archimedean data here");
    }
    return P;
}

// log of the analytic conductor: both twisted families scale like k^4
inline double conductor_log(FamilyTag family, int k) {
    if (family != FamilyTag::PhiF && family != FamilyTag::PhiSym2F)
        throw std::domain_error("conductor_log: unsupported family");
    if (k < 12) throw std::domain_error("conductor_log: k must be >= 12");
    return 4.0 * std::log(static_cast<double>(k));
}

namespace detail {

// J(a) = int g(x) psi(a + i pi x / log R) dx for even g, Re a > 0.
// Through the pole expansion of psi each Lorentzian integrates to an
// exponential in u, and the geometric sum over poles gives the exact form
//   J(a) = ghat(0) psi(a)
//        + 2L int_0^infty [ghat(0) - ghat(u) 1_{u<=sigma}] e^{-2aLu} / (1 - e^{-2Lu}) du
// with L = log R.  The integrand is smooth, compactly concentrated, and not
// oscillatory in x, so plain paneled quadrature reaches ~1e-12.
inline cplx gamma_J(cplx a, double L, const TestFunctionPair& F) {
    const double sig = F.support;
    const double g0h = F.ghat0;
    auto integrand = [&](double u, bool inside) {
        double den = -std::expm1(-2.0 * L * u);  // 1 - e^{-2Lu}, stable for small u
        double diff = inside ? (g0h - F.ghat(u)) : g0h;
        return diff * std::exp(-2.0 * a.real() * L * u) / den *
               cplx(std::cos(2.0 * a.imag() * L * u), -std::sin(2.0 * a.imag() * L * u));
    };
    // panel width resolving both the decay scale and the Im(a) oscillation
    double scale = 2.0 * std::max(1.0, a.real()) * L;
    double h = std::min(sig / 8.0, M_PI / (2.0 * L * (1.0 + std::abs(a.imag()))));
    h = std::min(h, 4.0 / scale);
    double tail_len = 45.0 / (2.0 * std::max(0.5, a.real()) * L);
    const double eps = 1e-13;
    auto re_in = [&](double u) { return integrand(u, true).real(); };
    auto im_in = [&](double u) { return integrand(u, true).imag(); };
    auto re_out = [&](double u) { return integrand(u, false).real(); };
    auto im_out = [&](double u) { return integrand(u, false).imag(); };
    cplx I(integrate_paneled(re_in, eps, sig, h, 1e-13),
           integrate_paneled(im_in, eps, sig, h, 1e-13));
    I += cplx(integrate_paneled(re_out, sig, sig + tail_len, h, 1e-13),
              integrate_paneled(im_out, sig, sig + tail_len, h, 1e-13));
    return g0h * digamma(a) + 2.0 * L * I;
}

} // namespace detail

// A / log R, where A integrates the digamma combination of the archimedean
// parameters against g (the completed-L logarithmic derivative at the center).
inline double gamma_term_A(const ArchimedeanParams& P, const TestFunctionPair& F, double R) {
    if (!(R > 1.0)) throw std::domain_error("gamma_term_A: R must be > 1");
    double logR = std::log(R);
    double A = -static_cast<double>(P.mu.size()) * std::log(M_PI) * F.ghat0;
    for (const cplx& z : P.psi_args())
        A += detail::gamma_J(z / 2.0, logR, F).real();  // J(z/2)+J(conj z/2) = 2 Re, halved
    return A / logR;
}

// Irreducible archimedean factors: label (-, +-it) or (ell, +-it); the list is
// closed under it -> -it.
struct WeilSummand {
    bool discrete = false;  // true: two-dimensional (ell, it); false: sign (-) type
    int ell = 0;
    double t_sign = 1.0;  // the +-t multiplicity handled by listing both
};

struct WeilRep {
    std::vector<WeilSummand> summands;
};

inline WeilRep weil_rep(FamilyTag family, int k) {
    if (k % 2 != 0 || k < 12) throw std::domain_error("weil_rep: k must be even and >= 12");
    WeilRep r;
    if (family == FamilyTag::PhiF) {
        r.summands = {{true, k - 1, 1.0}, {true, k - 1, -1.0}};
    } else if (family == FamilyTag::PhiSym2F) {
        r.summands = {{false, 0, 1.0}, {false, 0, -1.0}, {true, 2 * k - 2, 1.0},
                      {true, 2 * k - 2, -1.0}};
    } else {
        throw std::domain_error("weil_rep: unsupported family");
    }
    return r;
}

// one Gamma_R(s + shift + i t_sign t) factor
struct GammaRFactor {
    double shift = 0.0;
    double t_sign = 1.0;
};

// (-, +-it) -> Gamma_R(s + 1 +- it); (ell, +-it) -> Gamma_R(s +- it + ell/2) Gamma_R(s +- it + ell/2 + 1)
inline std::vector<GammaRFactor> gamma_factor_list(const WeilRep& rep) {
    std::vector<GammaRFactor> out;
    for (const auto& s : rep.summands) {
        if (!s.discrete) {
            out.push_back({1.0, s.t_sign});
        } else {
            out.push_back({s.ell / 2.0, s.t_sign});
            out.push_back({s.ell / 2.0 + 1.0, s.t_sign});
        }
    }
    return out;
}

// product of the local root numbers over the archimedean summands; finite primes
// are unramified and contribute 1.  eps(-,+-it) = i, eps(ell,+-it) = i^{ell+1}.
inline int root_number(FamilyTag family, int k) {
    WeilRep rep = weil_rep(family, k);
    int ipow = 0;  // exponent of i mod 4
    for (const auto& s : rep.summands) ipow += s.discrete ? (s.ell + 1) : 1;
    ipow %= 4;
    if (ipow == 0) return 1;
    if (ipow == 2) return -1;
    throw std::runtime_error("root_number: non-real epsilon product");
}

} // namespace llz
