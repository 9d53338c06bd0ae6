#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace llz {

using cplx = std::complex<double>;

template <class T>
struct Mat {
    int n = 0, m = 0;
    std::vector<T> a;
    Mat() = default;
    Mat(int rows, int cols) : n(rows), m(cols), a(static_cast<std::size_t>(rows) * cols, T{}) {}
    T& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * m + j]; }
    const T& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * m + j]; }
};

using RMat = Mat<double>;
using CMat = Mat<cplx>;

namespace detail {

inline double conj_if_complex(double x) { return x; }
inline cplx conj_if_complex(cplx z) { return std::conj(z); }

// reduce to upper Hessenberg form by Householder reflectors (eigenvalues only)
template <class T>
void hessenberg(Mat<T>& A) {
    int n = A.n;
    std::vector<T> v(n);
    for (int k = 0; k + 2 < n; ++k) {
        double scale = 0.0;
        for (int i = k + 1; i < n; ++i) scale += std::abs(A(i, k));
        if (scale == 0.0) continue;
        double norm2 = 0.0;
        for (int i = k + 1; i < n; ++i) {
            v[i] = A(i, k) / scale;
            norm2 += std::norm(v[i]);
        }
        double alpha = std::sqrt(norm2);
        if (alpha == 0.0) continue;
        T phase = std::abs(v[k + 1]) == 0.0 ? T(1) : v[k + 1] / std::abs(v[k + 1]);
        T w = v[k + 1] + phase * alpha;
        v[k + 1] = w;
        double vnorm2 = norm2 - std::norm(A(k + 1, k) / scale) + std::norm(w);
        if (vnorm2 == 0.0) continue;
        // A <- (I - 2 v v*/|v|^2) A (I - 2 v v*/|v|^2)
        for (int j = k; j < n; ++j) {
            T s{};
            for (int i = k + 1; i < n; ++i) s += conj_if_complex(v[i]) * A(i, j);
            s *= 2.0 / vnorm2;
            for (int i = k + 1; i < n; ++i) A(i, j) -= v[i] * s;
        }
        for (int i = 0; i < n; ++i) {
            T s{};
            for (int j = k + 1; j < n; ++j) s += A(i, j) * v[j];
            s *= 2.0 / vnorm2;
            for (int j = k + 1; j < n; ++j) A(i, j) -= s * conj_if_complex(v[j]);
        }
        for (int i = k + 2; i < n; ++i) A(i, k) = T(0);
    }
}

} // namespace detail

// Eigenvalues of a complex matrix: Hessenberg reduction + implicitly shifted QR
// (Wilkinson shift, Givens chase). Throws if an eigenvalue fails to converge.
inline std::vector<cplx> eig_complex(CMat A) {
    int n = A.n;
    if (n != A.m) throw std::invalid_argument("eig_complex: square matrix required");
    if (n == 0) return {};
    detail::hessenberg(A);
    std::vector<cplx> eig(n);
    int hi = n - 1;
    int iter_total = 0;
    const double eps = 1e-16;
    while (hi >= 0) {
        if (++iter_total > 80 * n) throw std::runtime_error("eig_complex: QR did not converge");
        // deflation scan
        int lo = hi;
        while (lo > 0) {
            double s = std::abs(A(lo - 1, lo - 1)) + std::abs(A(lo, lo));
            if (s == 0.0) s = 1.0;
            if (std::abs(A(lo, lo - 1)) < eps * s) {
                A(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            eig[hi] = A(hi, hi);
            --hi;
            continue;
        }
        // Wilkinson shift from the trailing 2x2 of the active block
        cplx a = A(hi - 1, hi - 1), b = A(hi - 1, hi), c = A(hi, hi - 1), d = A(hi, hi);
        cplx tr = a + d, det = a * d - b * c;
        cplx disc = std::sqrt(tr * tr - 4.0 * det);
        cplx m1 = 0.5 * (tr + disc), m2 = 0.5 * (tr - disc);
        cplx mu = std::abs(m1 - d) < std::abs(m2 - d) ? m1 : m2;
        // implicit single shift: chase the bulge with Givens rotations
        cplx x = A(lo, lo) - mu, z = A(lo + 1, lo);
        for (int k = lo; k < hi; ++k) {
            double r = std::hypot(std::abs(x), std::abs(z));
            cplx cs = r == 0.0 ? 1.0 : x / r;
            cplx sn = r == 0.0 ? 0.0 : z / r;
            int j0 = std::max(lo, k - 1);
            for (int j = j0; j < n; ++j) {
                cplx t1 = A(k, j), t2 = A(k + 1, j);
                A(k, j) = std::conj(cs) * t1 + std::conj(sn) * t2;
                A(k + 1, j) = -sn * t1 + cs * t2;
            }
            int i1 = std::min(hi, k + 2);
            for (int i = 0; i <= i1; ++i) {
                cplx t1 = A(i, k), t2 = A(i, k + 1);
                A(i, k) = cs * t1 + sn * t2;
                A(i, k + 1) = -std::conj(sn) * t1 + std::conj(cs) * t2;
            }
            if (k < hi - 1) {
                x = A(k + 1, k);
                z = A(k + 2, k);
            }
        }
    }
    return eig;
}

// Eigenvalues of a real matrix via Francis double-shift QR on the real Hessenberg form.
inline std::vector<cplx> eig_real(RMat A) {
    int n = A.n;
    if (n != A.m) throw std::invalid_argument("eig_real: square matrix required");
    if (n == 0) return {};
    detail::hessenberg(A);
    std::vector<cplx> eig;
    eig.reserve(n);
    int hi = n - 1;
    int iter_total = 0;
    const double eps = 1e-16;
    auto solve2x2 = [&](int i) {
        double a = A(i, i), b = A(i, i + 1), c = A(i + 1, i), d = A(i + 1, i + 1);
        double tr = a + d, det = a * d - b * c;
        double disc = tr * tr - 4.0 * det;
        if (disc >= 0.0) {
            double s = std::sqrt(disc);
            eig.emplace_back(0.5 * (tr + s), 0.0);
            eig.emplace_back(0.5 * (tr - s), 0.0);
        } else {
            double s = std::sqrt(-disc);
            eig.emplace_back(0.5 * tr, 0.5 * s);
            eig.emplace_back(0.5 * tr, -0.5 * s);
        }
    };
    while (hi >= 0) {
        if (++iter_total > 120 * n) throw std::runtime_error("eig_real: QR did not converge");
        int lo = hi;
        while (lo > 0) {
            double s = std::abs(A(lo - 1, lo - 1)) + std::abs(A(lo, lo));
            if (s == 0.0) s = 1.0;
            if (std::abs(A(lo, lo - 1)) < eps * s) {
                A(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            eig.emplace_back(A(hi, hi), 0.0);
            --hi;
            continue;
        }
        if (lo == hi - 1) {
            solve2x2(lo);
            hi -= 2;
            continue;
        }
        // Francis double shift from the trailing 2x2
        double s = A(hi - 1, hi - 1) + A(hi, hi);
        double t = A(hi - 1, hi - 1) * A(hi, hi) - A(hi - 1, hi) * A(hi, hi - 1);
        double x = A(lo, lo) * A(lo, lo) + A(lo, lo + 1) * A(lo + 1, lo) - s * A(lo, lo) + t;
        double y = A(lo + 1, lo) * (A(lo, lo) + A(lo + 1, lo + 1) - s);
        double z = A(lo + 2, lo + 1) * A(lo + 1, lo);
        for (int k = lo; k <= hi - 2; ++k) {
            // Householder on (x, y, z)
            double alpha = std::sqrt(x * x + y * y + z * z);
            if (alpha == 0.0) break;
            if (x > 0) alpha = -alpha;
            double v0 = x - alpha, v1 = y, v2 = z;
            double vn = v0 * v0 + v1 * v1 + v2 * v2;
            if (vn > 0.0) {
                int j0 = std::max(lo, k - 1);
                for (int j = j0; j < n; ++j) {
                    double sum = v0 * A(k, j) + v1 * A(k + 1, j) + v2 * A(k + 2, j);
                    sum *= 2.0 / vn;
                    A(k, j) -= v0 * sum;
                    A(k + 1, j) -= v1 * sum;
                    A(k + 2, j) -= v2 * sum;
                }
                int i1 = std::min(hi, k + 3);
                for (int i = 0; i <= i1; ++i) {
                    double sum = v0 * A(i, k) + v1 * A(i, k + 1) + v2 * A(i, k + 2);
                    sum *= 2.0 / vn;
                    A(i, k) -= v0 * sum;
                    A(i, k + 1) -= v1 * sum;
                    A(i, k + 2) -= v2 * sum;
                }
            }
            x = A(k + 1, k);
            y = A(k + 2, k);
            z = k + 3 <= hi ? A(k + 3, k) : 0.0;
        }
        // final 2-row rotation
        {
            int k = hi - 1;
            double alpha = std::hypot(x, y);
            if (alpha != 0.0) {
                double c = x / alpha, sn = y / alpha;
                for (int j = std::max(lo, k - 1); j < n; ++j) {
                    double t1 = A(k, j), t2 = A(k + 1, j);
                    A(k, j) = c * t1 + sn * t2;
                    A(k + 1, j) = -sn * t1 + c * t2;
                }
                for (int i = 0; i <= hi; ++i) {
                    double t1 = A(i, k), t2 = A(i, k + 1);
                    A(i, k) = c * t1 + sn * t2;
                    A(i, k + 1) = -sn * t1 + c * t2;
                }
            }
        }
    }
    return eig;
}

// Solve (A - lambda I) v ~ 0 by inverse iteration; returns the normalized vector.
inline std::vector<double> inverse_iteration(const RMat& A, double lambda, int iters = 4) {
    int n = A.n;
    RMat B = A;
    for (int i = 0; i < n; ++i) B(i, i) -= lambda * (1.0 + 1e-13) + 1e-300;
    // LU with partial pivoting
    std::vector<int> piv(n);
    for (int i = 0; i < n; ++i) piv[i] = i;
    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(B(i, k)) > std::abs(B(p, k))) p = i;
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(B(k, j), B(p, j));
            std::swap(piv[k], piv[p]);
        }
        double d = B(k, k);
        if (std::abs(d) < 1e-300) d = B(k, k) = 1e-300;
        for (int i = k + 1; i < n; ++i) {
            double f = B(i, k) / d;
            B(i, k) = f;
            for (int j = k + 1; j < n; ++j) B(i, j) -= f * B(k, j);
        }
    }
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    for (int it = 0; it < iters; ++it) {
        // permute then forward/back substitute
        std::vector<double> b(n);
        for (int i = 0; i < n; ++i) b[i] = v[piv[i]];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j) b[i] -= B(i, j) * b[j];
        for (int i = n - 1; i >= 0; --i) {
            for (int j = i + 1; j < n; ++j) b[i] -= B(i, j) * b[j];
            b[i] /= B(i, i);
        }
        double norm = 0.0;
        for (double x : b) norm += x * x;
        norm = std::sqrt(norm);
        for (int i = 0; i < n; ++i) v[i] = b[i] / norm;
    }
    // fix an overall sign for determinism
    for (int i = 0; i < n; ++i) {
        if (std::abs(v[i]) > 1e-8) {
            if (v[i] < 0)
                for (auto& x : v) x = -x;
            break;
        }
    }
    return v;
}

} // namespace llz
