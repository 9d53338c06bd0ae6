#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace llz {

// integer q-expansion: coefficient of q^n at index n
using ZSeries = std::vector<mpz_class>;

namespace detail {

inline std::size_t max_bits(const ZSeries& a) {
    std::size_t b = 0;
    for (const auto& x : a)
        if (x != 0) b = std::max(b, mpz_sizeinbase(x.get_mpz_t(), 2));
    return b;
}

// pack the nonnegative/negative parts separately, subtract: one signed mpz
inline mpz_class kronecker_pack(const ZSeries& a, std::size_t slot_bits) {
    const std::size_t limbs_per_slot = slot_bits / 64;
    const std::size_t n = a.size();
    std::vector<std::uint64_t> pos(n * limbs_per_slot, 0), neg(n * limbs_per_slot, 0);
    std::vector<std::uint64_t> tmp(limbs_per_slot);
    bool any_neg = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        std::size_t count = 0;
        mpz_export(tmp.data(), &count, -1, 8, 0, 0, a[i].get_mpz_t());
        auto* dst = (mpz_sgn(a[i].get_mpz_t()) >= 0) ? &pos : &neg;
        if (mpz_sgn(a[i].get_mpz_t()) < 0) any_neg = true;
        for (std::size_t l = 0; l < count; ++l) (*dst)[i * limbs_per_slot + l] = tmp[l];
    }
    mpz_class P, Ng;
    mpz_import(P.get_mpz_t(), pos.size(), -1, 8, 0, 0, pos.data());
    if (any_neg) {
        mpz_import(Ng.get_mpz_t(), neg.size(), -1, 8, 0, 0, neg.data());
        P -= Ng;
    }
    return P;
}

} // namespace detail

// (a*b) truncated at q^N, exact integer arithmetic.  The multiply packs both
// series into single big integers (slots of a fixed bit width) so gmp's FFT
// multiplication does the convolution.
inline ZSeries series_mul(const ZSeries& a, const ZSeries& b, std::size_t N) {
    ZSeries out(N + 1, mpz_class(0));
    std::size_t ba = detail::max_bits(a), bb = detail::max_bits(b);
    if (ba == 0 || bb == 0) return out;
    std::size_t conv_len = std::min(a.size(), N + 1) + std::min(b.size(), N + 1);
    std::size_t need = ba + bb + 64 - __builtin_clzll(conv_len) + 2;
    std::size_t slot_bits = ((need + 63) / 64) * 64;
    ZSeries at(a.begin(), a.begin() + std::min(a.size(), N + 1));
    ZSeries bt(b.begin(), b.begin() + std::min(b.size(), N + 1));
    mpz_class A = detail::kronecker_pack(at, slot_bits);
    mpz_class B = detail::kronecker_pack(bt, slot_bits);
    mpz_class C = A * B;
    bool neg = mpz_sgn(C.get_mpz_t()) < 0;
    if (neg) C = -C;
    // unpack with borrow: slot values are in (-2^{B-1}, 2^{B-1})
    const std::size_t lps = slot_bits / 64;
    std::size_t c_limbs = (mpz_sizeinbase(C.get_mpz_t(), 2) + 63) / 64;
    std::vector<std::uint64_t> limbs(std::max(c_limbs, (N + 2) * lps) + lps, 0);
    std::size_t count = 0;
    mpz_export(limbs.data(), &count, -1, 8, 0, 0, C.get_mpz_t());
    const mpz_class half = mpz_class(1) << (slot_bits - 1);
    const mpz_class top = mpz_class(1) << slot_bits;
    mpz_class slot;
    int carry = 0;
    for (std::size_t i = 0; i <= N; ++i) {
        // assemble slot i from its limbs plus carry
        mpz_import(slot.get_mpz_t(), lps, -1, 8, 0, 0, limbs.data() + i * lps);
        slot += carry;
        carry = 0;
        if (slot >= half) {
            slot -= top;
            carry = 1;
        }
        out[i] = neg ? mpz_class(-slot) : slot;
    }
    return out;
}

// divisor power sums sigma_e(n) for n <= N (e = 3 or 5)
inline std::vector<mpz_class> sigma_table(std::size_t N, int e) {
    std::vector<unsigned __int128> acc(N + 1, 0);
    for (std::uint64_t d = 1; d <= N; ++d) {
        unsigned __int128 de = d;
        for (int i = 1; i < e; ++i) de *= d;
        for (std::uint64_t m = d; m <= N; m += d) acc[m] += de;
    }
    std::vector<mpz_class> out(N + 1, mpz_class(0));
    for (std::size_t n = 1; n <= N; ++n) {
        unsigned __int128 v = acc[n];
        mpz_class hi(static_cast<std::uint64_t>(v >> 64));
        out[n] = (hi << 64) + static_cast<std::uint64_t>(v);
    }
    return out;
}

inline ZSeries eisenstein4(std::size_t N) {
    auto s3 = sigma_table(N, 3);
    ZSeries e(N + 1);
    e[0] = 1;
    for (std::size_t n = 1; n <= N; ++n) e[n] = 240 * s3[n];
    return e;
}

inline ZSeries eisenstein6(std::size_t N) {
    auto s5 = sigma_table(N, 5);
    ZSeries e(N + 1);
    e[0] = 1;
    for (std::size_t n = 1; n <= N; ++n) e[n] = -504 * s5[n];
    return e;
}

// Delta = (E4^3 - E6^2)/1728
inline ZSeries delta_form(std::size_t N) {
    ZSeries e4 = eisenstein4(N), e6 = eisenstein6(N);
    ZSeries e4sq = series_mul(e4, e4, N);
    ZSeries e4cu = series_mul(e4sq, e4, N);
    ZSeries e6sq = series_mul(e6, e6, N);
    ZSeries d(N + 1);
    for (std::size_t n = 0; n <= N; ++n) {
        mpz_class num = e4cu[n] - e6sq[n];
        if (!mpz_divisible_ui_p(num.get_mpz_t(), 1728))
            throw std::runtime_error("delta_form: non-integral coefficient");
        d[n] = num / 1728;
    }
    return d;
}

} // namespace llz
