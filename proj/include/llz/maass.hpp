#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "llz/primes.hpp"
#include "llz/rng.hpp"

namespace llz {

struct MissingDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class MaassProvenance { File, Synthetic };

// A fixed even Maass cusp form: spectral parameter and Hecke eigenvalues at primes.
struct MaassForm {
    double t_phi = 0.0;
    std::map<std::uint64_t, double> lambda;  // p -> lambda_phi(p)
    MaassProvenance provenance = MaassProvenance::File;
    std::vector<std::string> warnings;  // invariant checks that did not hold at load

    double lam_p(std::uint64_t p) const {
        auto it = lambda.find(p);
        if (it == lambda.end())
            throw MissingDataError("lambda_phi(" + std::to_string(p) + ") not in table");
        return it->second;
    }
    std::uint64_t max_prime() const { return lambda.empty() ? 0 : lambda.rbegin()->first; }
};

// lambda_phi(p^nu) via lambda(p^{j+1}) = lambda(p) lambda(p^j) - lambda(p^{j-1})
inline double lambda_phi_power(const MaassForm& phi, std::uint64_t p, int nu) {
    if (nu < 0) throw std::domain_error("lambda_phi_power: nu must be >= 0");
    if (nu == 0) return 1.0;
    double lp = phi.lam_p(p);
    if (nu == 1) return lp;
    double a = 1.0, b = lp;
    for (int j = 2; j <= nu; ++j) {
        double c = lp * b - a;
        a = b;
        b = c;
    }
    return b;
}

// file format: comments (#), header "maass t=<decimal> parity=even",
// then "p lambda" lines with primes ascending
inline MaassForm load_maass(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_maass: cannot open " + path);
    MaassForm phi;
    phi.provenance = MaassProvenance::File;
    std::string line;
    bool have_header = false;
    std::uint64_t last_p = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!have_header) {
            std::istringstream ss(line);
            std::string tag, tkv, pkv;
            ss >> tag >> tkv >> pkv;
            if (tag != "maass" || tkv.rfind("t=", 0) != 0 || pkv.rfind("parity=", 0) != 0)
                throw std::runtime_error("load_maass: malformed header");
            if (pkv.substr(7) != "even")
                throw std::runtime_error("load_maass: only even forms are supported");
            phi.t_phi = std::stod(tkv.substr(2));
            have_header = true;
            continue;
        }
        std::istringstream ss(line);
        std::uint64_t p;
        double v;
        if (!(ss >> p >> v)) throw std::runtime_error("load_maass: malformed line: " + line);
        if (p <= last_p) throw std::runtime_error("load_maass: primes must be ascending");
        bool is_prime = p >= 2;
        for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) {
                is_prime = false;
                break;
            }
        if (!is_prime)
            throw std::runtime_error("load_maass: " + std::to_string(p) + " is not prime");
        last_p = p;
        phi.lambda[p] = v;
    }
    if (!have_header) throw std::runtime_error("load_maass: missing header");
    if (phi.lambda.empty()) throw std::runtime_error("load_maass: empty prime list");
    for (const auto& [p, v] : phi.lambda) {
        double bound = 2.0 * std::pow(double(p), 7.0 / 64.0) + 1e-9;
        if (std::abs(v) > bound)
            phi.warnings.push_back("lambda(" + std::to_string(p) +
                                   ") exceeds the 7/64 temperedness bound");
    }
    return phi;
}

// lambda_phi(p) = 2 cos(theta_p), theta_p uniform; exercises the pipeline when no
// spectral data file is at hand (not claimed to come from an automorphic form)
inline MaassForm synthetic_maass(std::uint64_t seed, std::uint64_t P, double t) {
    if (P < 2) throw std::domain_error("synthetic_maass: P must be >= 2");
    MaassForm phi;
    phi.provenance = MaassProvenance::Synthetic;
    phi.t_phi = t;
    Rng rng(seed);
    for (std::uint64_t p : sieve_primes(P).primes)
        phi.lambda[p] = 2.0 * std::cos(M_PI * rng.uniform());
    return phi;
}

// (1/X) sum_{n<=X} lambda_phi(n)^2, multiplicative extension via smallest prime factors
inline double ramanujan_average_check(const MaassForm& phi, std::uint64_t X) {
    if (X < 1) throw std::domain_error("ramanujan_average_check: X must be >= 1");
    if (X > 1 && phi.max_prime() < X) {
        // every prime <= X appears as an n
        for (std::uint64_t p : sieve_primes(X).primes)
            if (!phi.lambda.count(p))
                throw MissingDataError("prime table does not cover n <= " + std::to_string(X));
    }
    // smallest prime factor sieve
    std::vector<std::uint32_t> spf(X + 1, 0);
    for (std::uint64_t i = 2; i <= X; ++i)
        if (spf[i] == 0)
            for (std::uint64_t m = i; m <= X; m += i)
                if (spf[m] == 0) spf[m] = static_cast<std::uint32_t>(i);
    std::vector<double> lam(X + 1, 0.0);
    lam[1] = 1.0;
    double total = 1.0;
    for (std::uint64_t n = 2; n <= X; ++n) {
        std::uint64_t p = spf[n], m = n, e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        lam[n] = lam[m] * lambda_phi_power(phi, p, static_cast<int>(e));
        total += lam[n] * lam[n];
    }
    return total / static_cast<double>(X);
}

} // namespace llz
