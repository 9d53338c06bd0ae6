#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "llz/testfns.hpp"

namespace llz {

struct PrimeTable {
    std::uint64_t limit = 0;
    std::vector<std::uint64_t> primes;  // ascending, all primes <= limit
};

// Sieve of Eratosthenes, odd numbers bit-packed.
inline PrimeTable sieve_primes(std::uint64_t limit) {
    if (limit < 2) throw std::domain_error("sieve_primes: limit must be >= 2");
    PrimeTable t;
    t.limit = limit;
    t.primes.push_back(2);
    if (limit < 3) return t;
    // bit i represents 2i+3
    std::uint64_t n_odd = (limit - 1) / 2;  // count of odd numbers 3,5,...,<=limit
    std::vector<std::uint64_t> bits((n_odd + 63) / 64, 0);
    auto is_set = [&](std::uint64_t i) { return (bits[i >> 6] >> (i & 63)) & 1u; };
    auto set = [&](std::uint64_t i) { bits[i >> 6] |= (std::uint64_t{1} << (i & 63)); };
    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;
    for (std::uint64_t p = 3; p <= root; p += 2) {
        if (is_set((p - 3) / 2)) continue;
        for (std::uint64_t m = p * p; m <= limit; m += 2 * p) set((m - 3) / 2);
    }
    t.primes.reserve(static_cast<std::size_t>(n_odd / 8) + 16);
    for (std::uint64_t i = 0; i < n_odd; ++i)
        if (!is_set(i)) t.primes.push_back(2 * i + 3);
    return t;
}

// log p if m = p^nu, else 0
inline double von_mangoldt(std::uint64_t m) {
    if (m == 0) throw std::domain_error("von_mangoldt: m must be positive");
    if (m == 1) return 0.0;
    std::uint64_t p = 0, r = m;
    for (std::uint64_t d = 2; d * d <= r; ++d) {
        if (r % d == 0) {
            p = d;
            while (r % d == 0) r /= d;
            break;
        }
    }
    if (p == 0) return std::log(static_cast<double>(m));  // m prime
    return r == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

struct PrimeSumResult {
    double value = 0.0;
    std::uint64_t limit_used = 0;
    bool truncated = false;  // supplied limit did not cover supp(ghat)
};

inline std::uint64_t prime_sum_auto_limit(const TestFunctionPair& F, int a, double R) {
    double lim = std::pow(R, F.support / a);
    if (lim > 4e9) throw std::domain_error("prime sum limit too large");
    return static_cast<std::uint64_t>(std::ceil(lim)) + 1;
}

// sum_p ghat(a log p / log R) (log p / log R) / p   -> F.g0 / (2a) as R -> infinity
inline PrimeSumResult prime_sum_linear(const TestFunctionPair& F, int a, double R,
                                       std::uint64_t limit = 0) {
    if (a < 1) throw std::domain_error("prime_sum_linear: a must be >= 1");
    if (!(R > 1.0)) throw std::domain_error("prime_sum_linear: R must be > 1");
    std::uint64_t need = prime_sum_auto_limit(F, a, R);
    PrimeSumResult res;
    res.truncated = limit != 0 && limit < need;
    res.limit_used = res.truncated ? limit : need;
    if (res.limit_used < 2) return res;
    double logR = std::log(R);
    PrimeTable t = sieve_primes(res.limit_used);
    for (std::uint64_t p : t.primes) {
        double lp = std::log(static_cast<double>(p));
        res.value += F.ghat(a * lp / logR) * (lp / logR) / static_cast<double>(p);
    }
    return res;
}

// sum_p ghat(log p / log R) 4 log^2 p / (p log^2 R)  -> 2 int |u| ghat(u) du
inline PrimeSumResult prime_sum_quadratic(const TestFunctionPair& F, double R,
                                          std::uint64_t limit = 0) {
    if (!(R > 1.0)) throw std::domain_error("prime_sum_quadratic: R must be > 1");
    std::uint64_t need = prime_sum_auto_limit(F, 1, R);
    PrimeSumResult res;
    res.truncated = limit != 0 && limit < need;
    res.limit_used = res.truncated ? limit : need;
    if (res.limit_used < 2) return res;
    double logR = std::log(R);
    PrimeTable t = sieve_primes(res.limit_used);
    for (std::uint64_t p : t.primes) {
        double lp = std::log(static_cast<double>(p));
        res.value += F.ghat(lp / logR) * 4.0 * lp * lp / (logR * logR) / static_cast<double>(p);
    }
    return res;
}

} // namespace llz
