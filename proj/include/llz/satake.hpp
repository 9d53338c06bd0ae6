#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "llz/hecke.hpp"
#include "llz/maass.hpp"

namespace llz {

enum class FamilyTag { F, Sym2F, PhiF, PhiSym2F };

inline int family_degree(FamilyTag t) {
    switch (t) {
        case FamilyTag::F: return 2;
        case FamilyTag::Sym2F: return 3;
        case FamilyTag::PhiF: return 4;
        case FamilyTag::PhiSym2F: return 6;
    }
    throw std::domain_error("family_degree: bad tag");
}

inline const char* family_name(FamilyTag t) {
    switch (t) {
        case FamilyTag::F: return "f";
        case FamilyTag::Sym2F: return "sym2f";
        case FamilyTag::PhiF: return "phi-f";
        case FamilyTag::PhiSym2F: return "phi-sym2f";
    }
    return "?";
}

// Satake parameter of a holomorphic form: alpha on the unit circle with
// alpha + conj(alpha) = lambda_f(p); branch Im alpha >= 0
inline cplx alpha_from_lambda(double lf_p) {
    if (std::abs(lf_p) > 2.0 + 1e-9)
        throw std::domain_error("alpha_from_lambda: |lambda| exceeds the Deligne bound");
    double c = std::min(1.0, std::max(-1.0, lf_p / 2.0));
    return {c, std::sqrt(std::max(0.0, 1.0 - c * c))};
}

// Maass case: unit circle when |lambda| <= 2, else real beta > 1 solving
// beta + 1/beta = lambda (temperedness is open for Maass forms)
inline cplx beta_from_lambda(double lphi_p) {
    if (std::abs(lphi_p) <= 2.0) {
        double c = lphi_p / 2.0;
        return {c, std::sqrt(std::max(0.0, 1.0 - c * c))};
    }
    double s = lphi_p > 0 ? 1.0 : -1.0;
    double a = std::abs(lphi_p);
    return {s * 0.5 * (a + std::sqrt(a * a - 4.0)), 0.0};
}

struct LocalParameters {
    FamilyTag family;
    std::uint64_t p = 0;
    std::vector<cplx> params;  // closed under inversion
};

inline LocalParameters local_params(FamilyTag family, cplx alpha, cplx beta, std::uint64_t p) {
    if (std::abs(std::abs(alpha) - 1.0) > 1e-9)
        throw std::domain_error("local_params: alpha must lie on the unit circle");
    LocalParameters lp;
    lp.family = family;
    lp.p = p;
    cplx ai = 1.0 / alpha, bi = 1.0 / beta;
    switch (family) {
        case FamilyTag::F:
            lp.params = {alpha, ai};
            break;
        case FamilyTag::Sym2F:
            lp.params = {alpha * alpha, cplx(1.0), ai * ai};
            break;
        case FamilyTag::PhiF:
            lp.params = {alpha * beta, alpha * bi, ai * beta, ai * bi};
            break;
        case FamilyTag::PhiSym2F:
            lp.params = {alpha * alpha * beta, alpha * alpha * bi, beta,
                         bi, ai * ai * beta, ai * ai * bi};
            break;
    }
    return lp;
}

// a(p^nu) = sum_j delta_p(j)^nu; inversion symmetry makes it real
inline double a_coeff_powersum(const LocalParameters& lp, int nu) {
    if (nu < 1) throw std::domain_error("a_coeff_powersum: nu must be >= 1");
    cplx s = 0.0;
    for (cplx d : lp.params) s += std::pow(d, nu);
    if (std::abs(s.imag()) > 1e-10 * (1.0 + std::abs(s.real())))
        throw std::runtime_error("a_coeff_powersum: imaginary part above tolerance");
    return s.real();
}

// lambda values at the prime powers p^j a closed form may need; j is the exponent
using PowerLookup = std::function<double(int)>;

inline PowerLookup lookup_from_form(const HeckeEigenform& f, std::uint64_t p) {
    return [&f, p](int j) {
        std::uint64_t n = 1;
        for (int i = 0; i < j; ++i) n *= p;
        return f.lam(n);
    };
}

inline PowerLookup lookup_from_maass(const MaassForm& phi, std::uint64_t p) {
    return [&phi, p](int j) { return lambda_phi_power(phi, p, j); };
}

// closed forms for a(p^nu) in terms of lambda_f and lambda_phi at prime powers:
//   f:          lambda_f(p^nu) - lambda_f(p^{nu-2})
//   sym2 f:     lambda_f(p^{2nu}) - lambda_f(p^{2nu-2}) + 1
//   phi x f:    (lambda_phi(p^nu) - lambda_phi(p^{nu-2})) (lambda_f(p^nu) - lambda_f(p^{nu-2}))
//   phi x sym2: (lambda_f(p^{2nu}) - lambda_f(p^{2nu-2}) + 1)(lambda_phi(p^nu) - lambda_phi(p^{nu-2}))
// with the lambda(p^{-1}) terms absent and lambda(p^0) = 1.
inline double a_coeff_closed(FamilyTag family, const PowerLookup& f_pow,
                             const PowerLookup& phi_pow, int nu) {
    if (nu < 1) throw std::domain_error("a_coeff_closed: nu must be >= 1");
    auto fd = [&](int j) { return j >= 2 ? f_pow(j) - f_pow(j - 2) : (j == 1 ? f_pow(1) : 1.0); };
    auto pd = [&](int j) {
        return j >= 2 ? phi_pow(j) - phi_pow(j - 2) : (j == 1 ? phi_pow(1) : 1.0);
    };
    auto sym2 = [&](int j) { return j >= 1 ? f_pow(2 * j) - f_pow(2 * j - 2) + 1.0 : 1.0; };
    switch (family) {
        case FamilyTag::F: return fd(nu);
        case FamilyTag::Sym2F: return sym2(nu);
        case FamilyTag::PhiF: return pd(nu) * fd(nu);
        case FamilyTag::PhiSym2F: return sym2(nu) * pd(nu);
    }
    throw std::domain_error("a_coeff_closed: bad tag");
}

// b(p) = a(p), b(p^2) = a(p^2) + 1
inline double b_coeff(FamilyTag family, const PowerLookup& f_pow, const PowerLookup& phi_pow,
                      int nu) {
    double a = a_coeff_closed(family, f_pow, phi_pow, nu);
    return nu == 2 ? a + 1.0 : a;
}

namespace detail {

inline std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, int>> fs;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            fs.emplace_back(d, e);
        }
    if (n > 1) fs.emplace_back(n, 1);
    return fs;
}

} // namespace detail

// Dirichlet coefficient of L(s, phi x sym^2 f): multiplicative, with local values
//   lambda(p^nu) = sum_{2i + j = nu} lambda_phi(p^j) A(p^i, p^j)
// where A(p^i, p^j) = S(i) S(j) - S(i-1) S(j-1) and S(r) = sum_{s^2 t = p^r} lambda_f(t^2)
// (the GL(3) coefficients of sym^2 f combined by the standard GL(2) x GL(3) convolution;
// cross-checked against the local Satake parameters in the tests).
inline double dirichlet_coeff_phi_sym2(std::uint64_t m, const HeckeEigenform& f,
                                       const MaassForm& phi) {
    if (m == 0) throw std::domain_error("dirichlet_coeff_phi_sym2: m must be positive");
    double out = 1.0;
    for (auto [p, e] : detail::factorize(m)) {
        auto fpow = lookup_from_form(f, p);
        auto S = [&](int r) {
            if (r < 0) return 0.0;
            double tot = 0.0;
            for (int s2 = 0; 2 * s2 <= r; ++s2) tot += fpow(2 * (r - 2 * s2));
            return tot;
        };
        auto A = [&](int i, int j) {
            double v = S(i) * S(j);
            if (i >= 1 && j >= 1) v -= S(i - 1) * S(j - 1);
            return v;
        };
        double loc = 0.0;
        for (int i = 0; 2 * i <= e; ++i) {
            int j = e - 2 * i;
            loc += lambda_phi_power(phi, p, j) * A(i, j);
        }
        out *= loc;
    }
    return out;
}

// Sign diagnostic from the second moment of the local parameters: the family
// average of a(p^2) with the fluctuating pieces removed.  Removing them amounts
// to evaluating the closed form with lambda_phi(p^2) -> 0 (its prime sum is
// bounded on average) and lambda_f(p^{2j}) -> 0 for j >= 1 (their family
// averages are off-diagonal), then scaling by the measured diagonal average.
inline double second_moment_diagnostic(FamilyTag family,
                                       const std::vector<HeckeEigenform>& forms,
                                       std::uint64_t P, const MaassForm& phi) {
    if (P < 2) throw std::domain_error("second_moment_diagnostic: cutoff too small");
    if (forms.empty()) throw std::domain_error("second_moment_diagnostic: empty eigenbasis");
    (void)phi;
    double diag = petersson_delta(forms, 1, 1);
    PowerLookup zero_f = [](int j) { return j == 0 ? 1.0 : 0.0; };
    PowerLookup zero_phi = [](int j) { return j == 0 ? 1.0 : 0.0; };
    auto primes = sieve_primes(P).primes;
    double avg = 0.0;
    for (std::uint64_t p : primes) {
        (void)p;  // the main term is p-independent once fluctuations are dropped
        avg += a_coeff_closed(family, zero_f, zero_phi, 2) * diag;
    }
    return avg / static_cast<double>(primes.size());
}

} // namespace llz
