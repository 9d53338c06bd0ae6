#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace llz {

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

template <class F>
double adaptive_simpson_rec(const F& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double err = left + right - whole;
    if (std::abs(err) <= 15.0 * tol || depth <= 0)
        return left + right + err / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
         + adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace detail

// adaptive Simpson on [a,b], absolute tolerance
template <class F>
double integrate(const F& f, double a, double b, double tol = 1e-10, int max_depth = 48) {
    if (!(a < b)) return a == b ? 0.0 : -integrate(f, b, a, tol, max_depth);
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm))
        throw QuadratureError("non-finite integrand");
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// Integral over [a,b] split into panels of width at most h (for oscillatory integrands
// Simpson alone may pass through nodes that alias the oscillation).
template <class F>
double integrate_paneled(const F& f, double a, double b, double h, double tol = 1e-10) {
    int n = std::max(1, static_cast<int>(std::ceil((b - a) / h)));
    double total = 0.0;
    double step = (b - a) / n;
    for (int i = 0; i < n; ++i)
        total += integrate(f, a + i * step, a + (i + 1) * step, tol / n);
    return total;
}

// int_0^infty f, where |f(x)| <= envelope_c / x^2 for x >= x0.
// Dyadic panels until both the panel value and the envelope tail bound are below tol.
template <class F>
double integrate_decaying(const F& f, double panel_h, double tol, double envelope_c,
                          double x0 = 1.0, double x_cap = 1e9) {
    double total = integrate_paneled(f, 0.0, x0, panel_h, 0.25 * tol);
    double lo = x0;
    while (lo < x_cap) {
        double hi = 2.0 * lo;
        total += integrate_paneled(f, lo, hi, panel_h, 0.125 * tol * (x0 / lo));
        lo = hi;
        if (envelope_c / lo < 0.5 * tol) return total;
    }
    throw QuadratureError("tail did not fall below tolerance");
}

} // namespace llz
