#pragma once

#include <cstdint>
#include <cmath>

namespace llz {

// xoshiro256++ with splitmix64 seeding. Deterministic across platforms,
// unlike std::normal_distribution, so identical seeds give identical CSV output.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& w : s_) {
            x += 0x9e3779b97f4a7c15ull;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
            w = z ^ (z >> 31);
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0, 1)
    double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

    // uniform in (0, 1] -- safe for log()
    double uniform_pos() { return ((next_u64() >> 11) + 1) * 0x1.0p-53; }

    // standard normal via Box-Muller (no cached spare; keeps the stream simple)
    double normal() {
        double u = uniform_pos();
        double v = uniform();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586477 * v);
    }

    // independent stream for worker w
    Rng split(std::uint64_t w) const {
        Rng r(*this);
        r.s_[0] ^= 0x8000000000000000ull ^ (w * 0x9e3779b97f4a7c15ull);
        r.next_u64();
        r.next_u64();
        return r;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

} // namespace llz
