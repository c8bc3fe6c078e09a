#pragma once

#include <cmath>
#include <cstdint>

namespace levycramer {

// Seeded, stream-splittable generator used by every Monte-Carlo routine.
//
// Core generator: xoshiro256++ (Blackman/Vigna), state expanded from a
// 64-bit seed with SplitMix64.  Replicate substreams are derived
// counter-style from (master_seed, stream_index), so a batch is
// reproducible bit-for-bit no matter in which order (or on how many
// threads) its replicates run.
//
// Gaussian variates use the Marsaglia polar method with a cached spare;
// the method is part of the reproducibility contract of this build.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) { seed_state(seed); }

    // Substream `stream` of master seed `seed`.
    Rng(std::uint64_t seed, std::uint64_t stream) {
        seed_state(seed + 0x9e3779b97f4a7c15ULL * (stream + 1));
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

    // Uniform on the open interval (0,1); never returns 0 or 1.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54;
    }

    // Standard exponential, rate 1.
    double exponential() { return -std::log(uniform()); }

    // Standard normal (Marsaglia polar, one spare cached per generator).
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    static std::uint64_t splitmix64(std::uint64_t& state) {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    void seed_state(std::uint64_t seed) {
        for (auto& s : s_) s = splitmix64(seed);
    }

    std::uint64_t s_[4]{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Deterministic per-purpose seed derivation, used when one top-level seed
// has to fan out into several independent batches.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t purpose) {
    std::uint64_t z = seed ^ (0xd1342543de82ef95ULL * (purpose + 1));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace levycramer
