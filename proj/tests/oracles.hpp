#pragma once

// Test-only reference implementations, independent of the library code paths
// they are used to check.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

namespace oracle {

inline std::vector<std::uint64_t> trial_division_primes(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 2; n <= limit; ++n) {
        bool prime = true;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) { prime = false; break; }
        if (prime) out.push_back(n);
    }
    return out;
}

// composite-trapezoid with Richardson step halving; plain and slow on purpose
template <class F>
double trapezoid_integral(const F& f, double a, double b, int n = 1 << 16) {
    double h = (b - a) / n;
    double s = 0.5 * (f(a) + f(b));
    for (int i = 1; i < n; ++i) s += f(a + i * h);
    return s * h;
}

// Kolmogorov-Smirnov p-value (asymptotic) for a sorted sample against U(0,1)
inline double ks_uniform_pvalue(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double lo = xs[i] - static_cast<double>(i) / n;
        double hi = static_cast<double>(i + 1) / n - xs[i];
        d = std::max(d, std::max(lo, hi));
    }
    double lam = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
    double p = 0.0;
    for (int j = 1; j <= 100; ++j)
        p += 2.0 * (j % 2 == 1 ? 1.0 : -1.0) * std::exp(-2.0 * j * j * lam * lam);
    return std::min(1.0, std::max(0.0, p));
}

inline std::string source_dir() {
    const char* d = std::getenv("LLZ_SOURCE_DIR");
    return d ? d : ".";
}

} // namespace oracle
