#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "llz/linalg.hpp"
#include "llz/primes.hpp"
#include "llz/series.hpp"

namespace llz {

inline constexpr double kZeta2 = 1.6449340668482264365;  // pi^2/6

struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// dim S_k for level 1
inline int dim_Sk(int k) {
    if (k < 4 || k % 2 != 0) throw std::domain_error("dim_Sk: k must be even and >= 4");
    return k % 12 == 2 ? k / 12 - 1 : k / 12;
}

using ZMat = Mat<mpz_class>;

// Cusp forms of weight k, level 1: echelonized integral basis b_i = q^i + O(q^{d+1})
// built from products of E4, E6 and Delta; exact Hecke matrices on that basis.
struct CuspSpace {
    int weight = 0;
    int dimension = 0;
    std::size_t nmax = 0;
    std::vector<ZSeries> basis;  // basis[i][n], i = 0..dim-1, leading index i+1
    mutable std::map<std::uint64_t, ZMat> hecke_cache;

    const ZMat& hecke_matrix(std::uint64_t p) const;
};

inline CuspSpace build_space(int k, std::size_t nmax) {
    int d = dim_Sk(k);
    CuspSpace S;
    S.weight = k;
    S.dimension = d;
    S.nmax = nmax;
    if (d == 0) return S;
    if (nmax < static_cast<std::size_t>(d) + 1)
        throw PrecisionError("build_space: nmax below dimension");
    ZSeries e4 = eisenstein4(nmax), e6 = eisenstein6(nmax), del = delta_form(nmax);
    // Delta^j for j = 1..d
    std::vector<ZSeries> dpow(d + 1);
    dpow[1] = del;
    for (int j = 2; j <= d; ++j) dpow[j] = series_mul(dpow[j - 1], del, nmax);
    // E4 powers up to the largest exponent needed
    int amax = 0;
    for (int j = 1; j <= d; ++j) {
        int w = k - 12 * j;
        int b = (w % 4 == 2) ? 1 : 0;
        amax = std::max(amax, (w - 6 * b) / 4);
    }
    std::vector<ZSeries> e4pow(amax + 1);
    e4pow[0] = ZSeries(nmax + 1, mpz_class(0));
    e4pow[0][0] = 1;
    for (int a = 1; a <= amax; ++a) e4pow[a] = series_mul(e4pow[a - 1], e4, nmax);
    S.basis.resize(d);
    for (int j = 1; j <= d; ++j) {
        int w = k - 12 * j;
        int b = (w % 4 == 2) ? 1 : 0;
        int a = (w - 6 * b) / 4;
        ZSeries g = series_mul(dpow[j], e4pow[a], nmax);
        if (b) g = series_mul(g, e6, nmax);
        S.basis[j - 1] = std::move(g);
    }
    // echelonize: clear the q^j coefficient of basis[i] for j > i (leading coeffs are 1)
    for (int j = d; j >= 1; --j) {
        for (int i = 1; i < j; ++i) {
            mpz_class c = S.basis[i - 1][j];
            if (c != 0) {
                auto& gi = S.basis[i - 1];
                const auto& gj = S.basis[j - 1];
                for (std::size_t n = 0; n <= nmax; ++n) gi[n] -= c * gj[n];
            }
        }
    }
    return S;
}

// T_p on the echelon basis (a-normalization): column j holds the coordinates of
// T_p b_j, read off from coefficients 1..d since the basis is echelonized.
inline const ZMat& CuspSpace::hecke_matrix(std::uint64_t p) const {
    auto it = hecke_cache.find(p);
    if (it != hecke_cache.end()) return it->second;
    int d = dimension;
    if (static_cast<std::size_t>(d) * p > nmax)
        throw PrecisionError("hecke_matrix: nmax insufficient for requested prime");
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, weight - 1);
    ZMat M(d, d);
    for (int j = 0; j < d; ++j) {
        const ZSeries& bj = basis[j];
        for (int i = 1; i <= d; ++i) {
            mpz_class v = bj[static_cast<std::size_t>(i) * p];
            if (i % p == 0) v += pk * bj[i / p];
            M(i - 1, j) = v;
        }
    }
    return hecke_cache.emplace(p, std::move(M)).first->second;
}

struct LValue {
    double value = 0.0;
    double drift = 0.0;  // |value - value at P/10| as a truncation proxy
    std::uint64_t cutoff = 0;
};

struct HeckeEigenform {
    int weight = 0;
    int index = 0;                // position within the weight's eigenbasis
    std::vector<double> lambda;   // lambda[n] = lambda_f(n), n <= nmax (lambda[0] unused)
    double L1sym2 = 0.0;          // L(1, sym^2 f)
    double L1sym2_drift = 0.0;
    double harmonic_weight = 0.0; // zeta(2)/L(1, sym^2 f)

    double lam(std::uint64_t n) const {
        if (n >= lambda.size()) throw PrecisionError("lambda_f(n) beyond stored range");
        return lambda[n];
    }
};

// Euler product over p <= P of [(1 - (lam(p^2)-1)/p + 1/p^2)(1 - 1/p)]^{-1}
inline LValue sym2_L_at_1(const HeckeEigenform& f, std::uint64_t P) {
    if (P < 100) throw std::domain_error("sym2_L_at_1: cutoff below 100 refused");
    if (P >= f.lambda.size()) throw PrecisionError("sym2_L_at_1: lambda table too short");
    PrimeTable t = sieve_primes(P);
    double L = 1.0, L_prev = 1.0;
    std::uint64_t prev_cut = P / 10;
    for (std::uint64_t p : t.primes) {
        double lp2 = p * p < f.lambda.size() ? f.lambda[p * p] : f.lambda[p] * f.lambda[p] - 1.0;
        double dp = static_cast<double>(p);
        L /= (1.0 - (lp2 - 1.0) / dp + 1.0 / (dp * dp)) * (1.0 - 1.0 / dp);
        if (p <= prev_cut) L_prev = L;
    }
    return {L, std::abs(L - L_prev), P};
}

namespace detail {

// scaled matrix with entries M(i,j) * (j/i)^{(k-1)/2} / p^{(k-1)/2}; eigenvalues
// are the normalized lambda_f(p) and entries stay O(1)
inline RMat scaled_hecke(const ZMat& M, int k, std::uint64_t p) {
    int d = M.n;
    RMat A(d, d);
    double e = 0.5 * (k - 1);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            long exp2;
            double m = mpz_get_d_2exp(&exp2, M(i, j).get_mpz_t());
            double logv = std::log(std::abs(m) + (m == 0.0 ? 1.0 : 0.0)) + exp2 * M_LN2;
            double scale = e * (std::log(double(j + 1)) - std::log(double(i + 1)) - std::log(double(p)));
            A(i, j) = (m == 0.0) ? 0.0 : (m > 0 ? 1.0 : -1.0) * std::exp(logv + scale);
        }
    return A;
}

} // namespace detail

// One eigenform per eigenvalue system of T_2, lambda-normalized; the numeric
// eigen-decomposition is certified by the residual ||Av - lambda v|| <= 1e-10 ||v||.
inline std::vector<HeckeEigenform> eigenforms(const CuspSpace& S, std::size_t nmax,
                                              std::uint64_t euler_P = 0) {
    if (nmax > S.nmax) throw PrecisionError("eigenforms: nmax beyond space precision");
    int d = S.dimension;
    std::vector<HeckeEigenform> out;
    if (d == 0) return out;
    if (euler_P == 0) euler_P = std::min<std::uint64_t>(nmax, 100000);
    euler_P = std::min<std::uint64_t>(euler_P, nmax);
    int k = S.weight;
    double e = 0.5 * (k - 1);
    // lambda-normalized basis rows
    std::vector<std::vector<double>> lam_basis(d, std::vector<double>(nmax + 1, 0.0));
    for (int i = 0; i < d; ++i)
        for (std::size_t n = 1; n <= nmax; ++n) {
            long exp2;
            double m = mpz_get_d_2exp(&exp2, S.basis[i][n].get_mpz_t());
            if (m == 0.0) continue;
            double logv = std::log(std::abs(m)) + exp2 * M_LN2 - e * std::log(double(n));
            lam_basis[i][n] = (m > 0 ? 1.0 : -1.0) * std::exp(logv);
        }
    std::vector<std::vector<double>> coords;  // a-normalized combination, first coord 1
    if (d == 1) {
        coords.push_back({1.0});
    } else {
        RMat A = detail::scaled_hecke(S.hecke_matrix(2), k, 2);
        auto ev = eig_complex([&] {
            CMat C(d, d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) C(i, j) = A(i, j);
            return C;
        }());
        std::vector<double> evr;
        for (auto z : ev) {
            if (std::abs(z.imag()) > 1e-8)
                throw std::runtime_error("eigenforms: complex T_2 eigenvalue");
            evr.push_back(z.real());
        }
        std::sort(evr.begin(), evr.end());
        for (int i = 0; i + 1 < d; ++i)
            if (evr[i + 1] - evr[i] < 1e-8)
                throw std::runtime_error("eigenforms: T_2 eigenvalues below separation tolerance");
        for (double lam2 : evr) {
            auto v = inverse_iteration(A, lam2);
            // residual certification on the scaled matrix
            double rn = 0.0, vn = 0.0;
            for (int i = 0; i < d; ++i) {
                double r = -lam2 * v[i];
                for (int j = 0; j < d; ++j) r += A(i, j) * v[j];
                rn += r * r;
                vn += v[i] * v[i];
            }
            if (std::sqrt(rn) > 1e-10 * std::sqrt(vn))
                throw std::runtime_error("eigenforms: eigenvector residual too large");
            // scaled coords -> a-normalized coords w_i = i^{(k-1)/2} v_i, then w_1 = 1
            std::vector<double> w(d);
            for (int i = 0; i < d; ++i) w[i] = std::pow(double(i + 1), e) * v[i];
            for (int i = d - 1; i >= 0; --i) w[i] /= w[0];
            coords.push_back(std::move(w));
        }
    }
    int idx = 0;
    for (const auto& w : coords) {
        HeckeEigenform f;
        f.weight = k;
        f.index = idx++;
        f.lambda.assign(nmax + 1, 0.0);
        for (std::size_t n = 1; n <= nmax; ++n) {
            double s = 0.0;
            for (int i = 0; i < d; ++i) s += w[i] * lam_basis[i][n];
            f.lambda[n] = s;
        }
        auto L = sym2_L_at_1(f, euler_P);
        f.L1sym2 = L.value;
        f.L1sym2_drift = L.drift;
        f.harmonic_weight = kZeta2 / L.value;
        out.push_back(std::move(f));
    }
    return out;
}

// lambda_f(m) lambda_f(n) = sum_{d | (m,n)} lambda_f(mn/d^2), all m,n <= M
inline bool check_multiplicativity(const HeckeEigenform& f, std::uint64_t M,
                                   double tol = 1e-10) {
    for (std::uint64_t m = 1; m <= M; ++m)
        for (std::uint64_t n = m; n <= M; ++n) {
            if (m * n >= f.lambda.size())
                throw PrecisionError("check_multiplicativity: lambda table too short");
            double rhs = 0.0;
            for (std::uint64_t d = 1; d <= m; ++d)
                if (m % d == 0 && n % d == 0) rhs += f.lambda[m * n / (d * d)];
            if (std::abs(f.lambda[m] * f.lambda[n] - rhs) > tol) return false;
        }
    return true;
}

// (zeta(2)/|H_k|) sum_f lambda_f(m) lambda_f(n) / L(1, sym^2 f)
inline double petersson_delta(const std::vector<HeckeEigenform>& forms, std::uint64_t m,
                              std::uint64_t n) {
    if (forms.empty()) throw std::domain_error("petersson_delta: empty eigenbasis");
    double s = 0.0;
    for (const auto& f : forms) s += f.harmonic_weight * f.lam(m) * f.lam(n);
    return s / static_cast<double>(forms.size());
}

// cache file: header "weight k dimension d form-index i", lines "k p lambda"
inline void save_lambda_cache(const HeckeEigenform& f, int dimension, const std::string& path,
                              std::uint64_t pmax) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_lambda_cache: cannot open " + path);
    out << "weight " << f.weight << " dimension " << dimension << " form-index " << f.index
        << "\n";
    out.precision(15);
    for (std::uint64_t p : sieve_primes(std::min<std::uint64_t>(pmax, f.lambda.size() - 1)).primes)
        out << f.weight << " " << p << " " << f.lambda[p] << "\n";
}

struct LambdaCache {
    int weight = 0, dimension = 0, index = 0;
    std::vector<std::pair<std::uint64_t, double>> lam;
};

inline LambdaCache load_lambda_cache(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_lambda_cache: cannot open " + path);
    LambdaCache c;
    std::string word;
    in >> word;
    if (word != "weight") throw std::runtime_error("load_lambda_cache: bad header");
    in >> c.weight >> word >> c.dimension >> word >> c.index;
    int k;
    std::uint64_t p;
    double v;
    while (in >> k >> p >> v) {
        if (k != c.weight) throw std::runtime_error("load_lambda_cache: weight mismatch");
        c.lam.emplace_back(p, v);
    }
    return c;
}

} // namespace llz
