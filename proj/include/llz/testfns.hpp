#pragma once
#include <algorithm>
#include <memory>

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "llz/quadrature.hpp"

namespace llz {

// An even test function g together with its (compactly supported) Fourier
// transform ghat(u) = int g(x) e^{-2 pi i x u} dx.  ghat vanishes for |u| >= support.
struct TestFunctionPair {
    double support = 0.0;
    std::function<double(double)> g;
    std::function<double(double)> ghat;
    double g0 = 0.0;     // g(0)
    double ghat0 = 0.0;  // ghat(0) = int g
    // |g(x)| <= tail_c / x^2 for |x| >= tail_x0 (used by improper integrals)
    double tail_c = 0.0;
    double tail_x0 = 1.0;
};

// sin(t)/t with the series branch near 0
inline double sinc(double t) {
    if (std::abs(t) < 1e-4) {
        double t2 = t * t;
        return 1.0 - t2 / 6.0 * (1.0 - t2 / 20.0);
    }
    return std::sin(t) / t;
}

// ghat = triangle of half-width sigma, g(x) = sigma * sinc^2(pi sigma x)
inline TestFunctionPair fejer_pair(double sigma) {
    if (!(sigma > 0.0)) throw std::domain_error("fejer_pair: sigma must be positive");
    TestFunctionPair F;
    F.support = sigma;
    F.g = [sigma](double x) {
        double s = sinc(M_PI * sigma * x);
        return sigma * s * s;
    };
    F.ghat = [sigma](double u) {
        double v = 1.0 - std::abs(u) / sigma;
        return v > 0.0 ? v : 0.0;
    };
    F.g0 = sigma;
    F.ghat0 = 1.0;
    F.tail_c = 1.0 / (M_PI * M_PI * sigma);
    F.tail_x0 = 1.0 / sigma;
    return F;
}

// pointwise product g1*g2; its transform is the convolution ghat1 * ghat2,
// evaluated by quadrature over the overlap of the supports
inline TestFunctionPair product_pair(const TestFunctionPair& f1, const TestFunctionPair& f2) {
    TestFunctionPair F;
    F.support = f1.support + f2.support;
    auto g1 = f1.g, g2 = f2.g;
    F.g = [g1, g2](double x) { return g1(x) * g2(x); };
    auto h1 = f1.ghat, h2 = f2.ghat;
    double s1 = f1.support, s2 = f2.support;
    auto conv = [h1, h2, s1, s2](double u) {
        double lo = std::max(-s1, u - s2), hi = std::min(s1, u + s2);
        if (lo >= hi) return 0.0;
        // split at the corner points of either factor so each piece is smooth
        std::vector<double> cuts{lo, hi};
        for (double c : {0.0, -s1, s1, u, u - s2, u + s2})
            if (c > lo && c < hi) cuts.push_back(c);
        std::sort(cuts.begin(), cuts.end());
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            if (cuts[i + 1] > cuts[i])
                total += integrate([&](double v) { return h1(v) * h2(u - v); },
                                   cuts[i], cuts[i + 1], 1e-12);
        return total;
    };
    // the convolution is piecewise smooth; tabulate once and interpolate, since
    // the gamma-term quadrature evaluates ghat tens of thousands of times
    constexpr int kGrid = 1 << 15;
    auto table = std::make_shared<std::vector<double>>(kGrid + 1);
    double S = F.support;
    for (int i = 0; i <= kGrid; ++i) (*table)[i] = conv(S * i / kGrid);
    F.ghat = [table, S](double u) {
        double a = std::abs(u);
        if (a >= S) return 0.0;
        double x = a / S * kGrid;
        int i = std::min(kGrid - 1, static_cast<int>(x));
        double w = x - i;
        return (*table)[i] * (1.0 - w) + (*table)[i + 1] * w;
    };
    F.g0 = f1.g0 * f2.g0;
    F.ghat0 = F.ghat(0.0);
    F.tail_c = f1.tail_c * f2.tail_c;  // product decays like x^-4; x^-2 envelope is safe
    F.tail_x0 = std::max(f1.tail_x0, f2.tail_x0);
    // envelope in x^-2 form: g1*g2 <= (c1/x^2)(c2/x^2) <= (c1*c2/x0^2)/x^2
    F.tail_c = f1.tail_c * f2.tail_c / (F.tail_x0 * F.tail_x0);
    return F;
}

// int g(x) cos(2 pi x y) dx computed as an improper oscillatory integral
inline double fourier_of_g(const TestFunctionPair& F, double y, double tol) {
    double osc = std::max(std::abs(y), F.support);
    double h = 0.25 / std::max(0.5, osc);  // a few panels per oscillation
    auto f = [&](double x) { return F.g(x) * std::cos(2.0 * M_PI * x * y); };
    return 2.0 * integrate_decaying(f, h, 0.5 * tol, F.tail_c, F.tail_x0);
}

// true iff |int g(x) e^{-2 pi i x y} dx - ghat(y)| < tol for every y in grid
inline bool verify_pair(const TestFunctionPair& F, const std::vector<double>& grid, double tol) {
    if (grid.empty()) throw std::domain_error("verify_pair: empty grid");
    for (double y : grid) {
        double lhs = fourier_of_g(F, y, 0.1 * tol);
        if (std::abs(lhs - F.ghat(y)) >= tol) return false;
    }
    return true;
}

// int ghat1(u) ghat2(u) du = int g1 g2 dx
inline double plancherel_product_at_0(const TestFunctionPair& f1, const TestFunctionPair& f2) {
    double s = std::min(f1.support, f2.support);
    return 2.0 * integrate([&](double u) { return f1.ghat(u) * f2.ghat(u); }, 0.0, s, 1e-11);
}

// int |u| ghat1(u) ghat2(u) du
inline double weighted_abs_integral(const TestFunctionPair& f1, const TestFunctionPair& f2) {
    double s = std::min(f1.support, f2.support);
    return 2.0 * integrate([&](double u) { return u * f1.ghat(u) * f2.ghat(u); }, 0.0, s, 1e-11);
}

} // namespace llz
