#pragma once

#include <cstdint>
#include <random>

namespace slhz {

// splitmix64, used for seed mixing and stream derivation.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline uint64_t mix_seed(uint64_t a, uint64_t b) {
    uint64_t s = a;
    uint64_t h = splitmix64(s);
    s ^= b + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return splitmix64(s);
}

// Seedable generator. Real-valued draws are mapped from raw 64-bit output
// so that sequences are identical across standard library implementations.
class Rng {
public:
    Rng() : eng_(0) {}
    explicit Rng(uint64_t seed) : eng_(seed) {}

    // Independent stream for (master seed, id...) without sequence coupling.
    static Rng stream(uint64_t master, uint64_t id0, uint64_t id1 = 0, uint64_t id2 = 0) {
        uint64_t s = mix_seed(master, id0);
        s = mix_seed(s, id1);
        s = mix_seed(s, id2);
        return Rng(s);
    }

    uint64_t u64() { return eng_(); }

    // uniform on [0, 1) with 53-bit resolution
    double uniform01() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    bool bernoulli(double p) { return uniform01() < p; }

    // uniform integer in [0, n)
    uint64_t below(uint64_t n) {
        uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t v = u64();
        while (v >= limit) v = u64();
        return v % n;
    }

    int8_t pm_one() { return (u64() & 1) ? int8_t{1} : int8_t{-1}; }

private:
    std::mt19937_64 eng_;
};

}  // namespace slhz
