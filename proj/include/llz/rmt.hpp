#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "llz/linalg.hpp"
#include "llz/rng.hpp"
#include "llz/testfns.hpp"

namespace llz {

enum class SymmetryGroup { U, USp, O, SOeven, SOodd };

inline const char* group_name(SymmetryGroup g) {
    switch (g) {
        case SymmetryGroup::U: return "U";
        case SymmetryGroup::USp: return "USp";
        case SymmetryGroup::O: return "O";
        case SymmetryGroup::SOeven: return "SOeven";
        case SymmetryGroup::SOodd: return "SOodd";
    }
    return "?";
}

inline double sinc_pi(double y) { return sinc(M_PI * y); }

struct Kernel1Value {
    double value = 0.0;  // absolutely continuous part
    double atom = 0.0;   // weight of a delta at x = 0
};

// one-level densities W_1
inline Kernel1Value kernel_W1(SymmetryGroup g, double x) {
    double K2 = sinc_pi(2.0 * x);
    switch (g) {
        case SymmetryGroup::U: return {1.0, 0.0};
        case SymmetryGroup::USp: return {1.0 - K2, 0.0};
        case SymmetryGroup::SOeven: return {1.0 + K2, 0.0};
        case SymmetryGroup::SOodd: return {1.0 - K2, 1.0};
        case SymmetryGroup::O: return {1.0, 0.5};
    }
    throw std::domain_error("kernel_W1: bad group");
}

struct Kernel2Value {
    double value = 0.0;   // absolutely continuous part
    double atom_x1 = 0.0; // coefficient of delta(x1)
    double atom_x2 = 0.0; // coefficient of delta(x2)
};

// two-level density determinants with K_eps(x,y) = K(x-y) + eps K(x+y)
inline Kernel2Value kernel_W2(SymmetryGroup g, double x1, double x2) {
    auto keps = [&](double eps, double x, double y) {
        return sinc_pi(x - y) + eps * sinc_pi(x + y);
    };
    auto det2 = [&](double eps) {
        return keps(eps, x1, x1) * keps(eps, x2, x2) - keps(eps, x1, x2) * keps(eps, x2, x1);
    };
    switch (g) {
        case SymmetryGroup::U: {
            double K = sinc_pi(x1 - x2);
            return {1.0 - K * K, 0.0, 0.0};
        }
        case SymmetryGroup::USp: return {det2(-1.0), 0.0, 0.0};
        case SymmetryGroup::SOeven: return {det2(1.0), 0.0, 0.0};
        case SymmetryGroup::SOodd: {
            Kernel2Value v;
            v.value = det2(-1.0);
            v.atom_x1 = 1.0 - sinc_pi(2.0 * x2);
            v.atom_x2 = 1.0 - sinc_pi(2.0 * x1);
            return v;
        }
        case SymmetryGroup::O: {
            auto e = kernel_W2(SymmetryGroup::SOeven, x1, x2);
            auto o = kernel_W2(SymmetryGroup::SOodd, x1, x2);
            return {0.5 * (e.value + o.value), 0.5 * o.atom_x1, 0.5 * o.atom_x2};
        }
    }
    throw std::domain_error("kernel_W2: bad group");
}

// int ghat(u) What_1(u) du for supp(ghat) inside (-1,1): the delta atom in each
// What contributes ghat(0)
inline double predicted_1level(SymmetryGroup g, const TestFunctionPair& F) {
    if (F.support >= 1.0)
        throw std::domain_error("predicted_1level: support must be inside (-1,1)");
    switch (g) {
        case SymmetryGroup::U: return F.ghat0;
        case SymmetryGroup::USp: return F.ghat0 - 0.5 * F.g0;
        default: return F.ghat0 + 0.5 * F.g0;  // the three orthogonal types
    }
}

inline double two_level_c(SymmetryGroup g) {
    switch (g) {
        case SymmetryGroup::SOeven: return 0.0;
        case SymmetryGroup::O: return 0.5;
        case SymmetryGroup::SOodd: return 1.0;
        default: throw std::domain_error("two_level_c: orthogonal groups only");
    }
}

inline double predicted_2level(SymmetryGroup g, const TestFunctionPair& f1,
                               const TestFunctionPair& f2) {
    if (f1.support + f2.support >= 1.0)
        throw std::domain_error("predicted_2level: supports must satisfy s1+s2 < 1");
    double c = two_level_c(g);
    return (f1.ghat0 + 0.5 * f1.g0) * (f2.ghat0 + 0.5 * f2.g0) +
           2.0 * weighted_abs_integral(f1, f2) - 2.0 * plancherel_product_at_0(f1, f2) -
           f1.g0 * f2.g0 + c * f1.g0 * f2.g0;
}

struct EigenangleSample {
    SymmetryGroup group;
    int N = 0;                     // size parameter: U(N), SO(2N), SO(2N+1), USp(2N)
    std::vector<double> angles;    // in (-pi, pi]
    std::vector<double> normalized;  // x = theta * Ntilde / (2 pi); symmetric for SO/USp
    bool has_central = false;      // SO(2N+1): the forced eigenvalue at theta = 0
    double period = 0.0;           // x-period of the eigenphase set (Ntilde)
};

namespace detail {

// complex Ginibre -> modified Gram-Schmidt (positive real diagonal) -> Haar U(N)
inline CMat haar_unitary(int n, Rng& rng) {
    CMat A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = cplx(rng.normal(), rng.normal());
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            cplx dot = 0.0;
            for (int r = 0; r < n; ++r) dot += std::conj(A(r, i)) * A(r, j);
            for (int r = 0; r < n; ++r) A(r, j) -= dot * A(r, i);
        }
        double norm = 0.0;
        for (int r = 0; r < n; ++r) norm += std::norm(A(r, j));
        norm = std::sqrt(norm);
        if (norm < 1e-12) throw std::runtime_error("haar_unitary: rank deficiency");
        for (int r = 0; r < n; ++r) A(r, j) /= norm;
    }
    return A;
}

// real Ginibre -> MGS -> Haar O(n); caller handles the determinant sign
inline RMat haar_orthogonal(int n, Rng& rng) {
    RMat A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = rng.normal();
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            double dot = 0.0;
            for (int r = 0; r < n; ++r) dot += A(r, i) * A(r, j);
            for (int r = 0; r < n; ++r) A(r, j) -= dot * A(r, i);
        }
        double norm = 0.0;
        for (int r = 0; r < n; ++r) norm += A(r, j) * A(r, j);
        norm = std::sqrt(norm);
        if (norm < 1e-12) throw std::runtime_error("haar_orthogonal: rank deficiency");
        for (int r = 0; r < n; ++r) A(r, j) /= norm;
    }
    return A;
}

inline double det_sign(RMat A) {
    int n = A.n;
    double sign = 1.0;
    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(A(i, k)) > std::abs(A(p, k))) p = i;
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(A(k, j), A(p, j));
            sign = -sign;
        }
        if (A(k, k) < 0) sign = -sign;
        if (A(k, k) == 0.0) return 0.0;
        for (int i = k + 1; i < n; ++i) {
            double f = A(i, k) / A(k, k);
            for (int j = k; j < n; ++j) A(i, j) -= f * A(k, j);
        }
    }
    return sign;
}

// quaternionic Gram-Schmidt: columns come in pairs (c, -J conj c); the result
// is Haar on the compact symplectic group inside U(2N)
inline CMat haar_usp(int N, Rng& rng) {
    int n = 2 * N;
    std::vector<std::vector<cplx>> cols;
    cols.reserve(n);
    auto partner = [N, n](const std::vector<cplx>& v) {
        std::vector<cplx> w(n);
        for (int i = 0; i < N; ++i) {
            // -J conj(v): J has +I in the top-right block, -I bottom-left
            w[i] = std::conj(v[i + N]);
            w[i + N] = -std::conj(v[i]);
        }
        for (auto& z : w) z = -z;
        return w;
    };
    for (int j = 0; j < N; ++j) {
        std::vector<cplx> z(n);
        for (int i = 0; i < n; ++i) z[i] = cplx(rng.normal(), rng.normal());
        for (const auto& c : cols) {
            cplx dot = 0.0;
            for (int r = 0; r < n; ++r) dot += std::conj(c[r]) * z[r];
            for (int r = 0; r < n; ++r) z[r] -= dot * c[r];
        }
        double norm = 0.0;
        for (int r = 0; r < n; ++r) norm += std::norm(z[r]);
        norm = std::sqrt(norm);
        if (norm < 1e-12) throw std::runtime_error("haar_usp: rank deficiency");
        for (int r = 0; r < n; ++r) z[r] /= norm;
        cols.push_back(z);
        cols.push_back(partner(z));
    }
    // order as [c_1..c_N | d_1..d_N] so the matrix satisfies M^T J M = J
    CMat M(n, n);
    for (int j = 0; j < N; ++j)
        for (int r = 0; r < n; ++r) {
            M(r, j) = cols[2 * j][r];
            M(r, j + N) = cols[2 * j + 1][r];
        }
    return M;
}

} // namespace detail

// Haar sample with eigenangles from the in-repo QR eigensolver; the normalized
// zeros list is symmetric under negation for the self-dual groups (conjugate
// eigenvalue pairs), with the forced theta = 0 eigenvalue of SO(2N+1) included.
inline EigenangleSample sample_haar(SymmetryGroup group, int N, Rng& rng) {
    if (N < 1 || N > 100) throw std::domain_error("sample_haar: N out of range");
    if (group == SymmetryGroup::O)
        return sample_haar(rng.uniform() < 0.5 ? SymmetryGroup::SOeven : SymmetryGroup::SOodd, N,
                           rng);
    EigenangleSample s;
    s.group = group;
    s.N = N;
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<cplx> ev;
        if (group == SymmetryGroup::U) {
            ev = eig_complex(detail::haar_unitary(N, rng));
        } else if (group == SymmetryGroup::USp) {
            ev = eig_complex(detail::haar_usp(N, rng));
        } else {
            int dim = group == SymmetryGroup::SOeven ? 2 * N : 2 * N + 1;
            RMat M = detail::haar_orthogonal(dim, rng);
            if (detail::det_sign(M) < 0) continue;  // condition on SO(n)
            ev = eig_real(M);
        }
        bool ok = true;
        for (auto z : ev)
            if (std::abs(std::abs(z) - 1.0) > 1e-8) ok = false;
        if (!ok) continue;  // resample on eigensolver trouble
        s.angles.clear();
        for (auto z : ev) s.angles.push_back(std::arg(z));
        std::sort(s.angles.begin(), s.angles.end());
        if (group == SymmetryGroup::U) {
            s.period = static_cast<double>(N);
            for (double th : s.angles) s.normalized.push_back(th * N / (2.0 * M_PI));
            return s;
        }
        double Ntilde = 2.0 * N;
        s.period = Ntilde;
        std::vector<double> pos;
        int near_zero = 0;
        for (double th : s.angles) {
            if (std::abs(th) < 1e-7)
                ++near_zero;
            else if (th > 0)
                pos.push_back(th * Ntilde / (2.0 * M_PI));
        }
        if (group == SymmetryGroup::SOodd) {
            if (near_zero != 1) continue;  // the forced +1 eigenvalue must be simple
            s.has_central = true;
        } else if (near_zero != 0) {
            continue;
        }
        std::sort(pos.begin(), pos.end());
        s.normalized.clear();
        for (auto it = pos.rbegin(); it != pos.rend(); ++it) s.normalized.push_back(-*it);
        if (s.has_central) s.normalized.push_back(0.0);
        for (double x : pos) s.normalized.push_back(x);
        return s;
    }
    throw std::runtime_error("sample_haar: repeated sampling failures");
}

struct MonteCarloResult {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::uint64_t samples = 0;
};

namespace detail {

// The eigenphase set is 2 pi periodic, so the zero set extends periodically in
// the normalized coordinate with period Ntilde; sum g over enough periodic
// images that the neglected mass (~ tail_c / ((M - 1/2) period)) is harmless.
inline int copies_needed(const TestFunctionPair& F, double period, double tol) {
    int m = 1;
    while (F.tail_c / ((m - 0.5) * period) > tol && m < 40) ++m;
    return m;
}

inline double one_level_statistic(const EigenangleSample& s, const TestFunctionPair& F) {
    int M = copies_needed(F, s.period, 1e-7);
    double tot = 0.0;
    for (double x : s.normalized)
        for (int m = -M; m <= M; ++m) tot += F.g(x + m * s.period);
    return tot;
}

// sum over ordered pairs of distinct zeros excluding reflection partners
inline double two_level_statistic(const EigenangleSample& s, const TestFunctionPair& f1,
                                  const TestFunctionPair& f2) {
    int M = std::max(copies_needed(f1, s.period, 1e-7), copies_needed(f2, s.period, 1e-7));
    double s1 = 0.0, s2 = 0.0, diag = 0.0, refl = 0.0;
    // zero list: x + m*period for each base x; partner of (x, m) is (-x, -m)
    for (double x : s.normalized) {
        for (int m = -M; m <= M; ++m) {
            double z = x + m * s.period;
            s1 += f1.g(z);
            s2 += f2.g(z);
            diag += f1.g(z) * f2.g(z);
            refl += f1.g(z) * f2.g(-z);
        }
    }
    return s1 * s2 - diag - refl + (s.has_central ? f1.g0 * f2.g0 : 0.0);
}

} // namespace detail

// Monte Carlo n-level statistic; deterministic for a fixed seed (worker streams
// are split from the seed in a fixed layout).
inline MonteCarloResult empirical_nlevel(SymmetryGroup group, int N, std::uint64_t num_samples,
                                         const TestFunctionPair& f1, const TestFunctionPair* f2,
                                         std::uint64_t seed, int nworkers = 4) {
    if (f2 == nullptr && f1.support >= 1.0)
        throw std::domain_error("empirical_nlevel: support must be inside (-1,1)");
    if (f2 != nullptr && f1.support + f2->support >= 1.0)
        throw std::domain_error("empirical_nlevel: supports must satisfy s1+s2 < 1");
    if (f2 != nullptr && group == SymmetryGroup::U)
        throw std::domain_error("empirical_nlevel: two-level runs use the self-dual groups");
    Rng base(seed);
    std::vector<double> sums(nworkers, 0.0), sqs(nworkers, 0.0);
    std::vector<std::uint64_t> counts(nworkers, 0);
    auto work = [&](int w) {
        Rng rng = base.split(static_cast<std::uint64_t>(w) + 1);
        std::uint64_t n = num_samples / nworkers + (w < int(num_samples % nworkers) ? 1 : 0);
        double s = 0.0, q = 0.0;
        for (std::uint64_t i = 0; i < n; ++i) {
            auto samp = sample_haar(group, N, rng);
            double v = f2 == nullptr ? detail::one_level_statistic(samp, f1)
                                     : detail::two_level_statistic(samp, f1, *f2);
            s += v;
            q += v * v;
        }
        sums[w] = s;
        sqs[w] = q;
        counts[w] = n;
    };
    std::vector<std::thread> threads;
    for (int w = 1; w < nworkers; ++w) threads.emplace_back(work, w);
    work(0);
    for (auto& t : threads) t.join();
    double s = 0.0, q = 0.0;
    std::uint64_t n = 0;
    for (int w = 0; w < nworkers; ++w) {
        s += sums[w];
        q += sqs[w];
        n += counts[w];
    }
    MonteCarloResult r;
    r.samples = n;
    r.mean = s / n;
    double var = (q - s * s / n) / (n - 1.0);
    r.stderr_ = std::sqrt(std::max(0.0, var) / n);
    return r;
}

// per-sample statistics CSV: group, N, sample_index, statistic, value
inline void write_samples_csv(std::ostream& out, SymmetryGroup group, int N,
                              std::uint64_t num_samples, const TestFunctionPair& F,
                              std::uint64_t seed) {
    out << "group,N,sample_index,statistic,value\n";
    Rng rng(seed);
    for (std::uint64_t i = 0; i < num_samples; ++i) {
        auto s = sample_haar(group, N, rng);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", detail::one_level_statistic(s, F));
        out << group_name(group) << "," << N << "," << i << ",one_level," << buf << "\n";
    }
}

} // namespace llz
