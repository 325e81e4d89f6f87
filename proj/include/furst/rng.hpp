#pragma once

#include <cstdint>

namespace furst {

// Counter-free splittable generator. Every consumer derives its own stream
// from (seed, salt...) so merge order never matters and replays are exact.
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t s = 0) : state(s) {}

    uint64_t next_u64() {
        state += 0x9e3779b97f4a7c15ull;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [lo, hi)
    double next_range(double lo, double hi) { return lo + (hi - lo) * next_double(); }
};

inline uint64_t mix_u64(uint64_t z) {
    z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdull;
    z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ull;
    return z ^ (z >> 33);
}

// Stream derivation contract: rng_stream(seed, module_id, experiment_id, path_index).
// Identical arguments give bit-identical streams on every platform.
inline Rng rng_stream(uint64_t seed, uint64_t a = 0, uint64_t b = 0, uint64_t c = 0) {
    uint64_t s = mix_u64(seed ^ 0x6a09e667f3bcc909ull);
    s = mix_u64(s ^ (a + 0xbb67ae8584caa73bull));
    s = mix_u64(s ^ (b + 0x3c6ef372fe94f82bull));
    s = mix_u64(s ^ (c + 0xa54ff53a5f1d36f1ull));
    return Rng(s);
}

} // namespace furst
