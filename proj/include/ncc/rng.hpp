#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ncc {

// splitmix64 step; used to derive independent stream seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seed for stream `stream` under `master`. Stable across platforms and worker
// counts, so per-rep work can be scheduled on any thread.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t s = master ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    std::uint64_t a = splitmix64(s);
    std::uint64_t b = splitmix64(s);
    return a ^ (b << 1);
}

// mt19937_64 wrapper with fully specified distributions. The standard leaves
// std::uniform_*_distribution unspecified, so every draw here is implemented
// in terms of raw 64-bit outputs to keep results byte-identical everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Uniform integer in [0, bound) by bitmask rejection; unbiased.
    std::uint64_t uniform_below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        std::uint64_t mask = ~0ULL >> countl_zero_(bound - 1);
        std::uint64_t x;
        do {
            x = eng_() & mask;
        } while (x >= bound);
        return x;
    }

    // Geometric number of failures before a pf-success, mean pf/(1-pf).
    // P(X = k) = (1-pf) * pf^k for k = 0, 1, 2, ...
    std::uint64_t geometric_failures(double pf) {
        if (pf <= 0.0) return 0;
        double u = uniform01();
        double g = std::floor(std::log1p(-u) / std::log(pf));
        return g < 0 ? 0 : static_cast<std::uint64_t>(g);
    }

private:
    static int countl_zero_(std::uint64_t x) {
        int c = 0;
        for (std::uint64_t probe = 1ULL << 63; probe && !(x & probe); probe >>= 1) ++c;
        return c;
    }

    std::mt19937_64 eng_;
};

}  // namespace ncc
