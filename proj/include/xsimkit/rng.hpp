#pragma once

#include <cstdint>
#include <random>

namespace xsimkit {

// All randomness in the pipeline flows through this wrapper. std::mt19937_64
// output is fully specified by the standard, and bounded draws below() avoid
// std::uniform_int_distribution, whose mapping differs between standard
// library implementations. Together that makes seeded runs byte-identical
// across platforms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform draw in [0, n). n must be > 0.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
        std::uint64_t v = engine_();
        while (v < threshold) v = engine_();
        return v % n;
    }

    // Uniform draw in [lo, hi] inclusive.
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
        return lo + below(hi - lo + 1);
    }

  private:
    std::mt19937_64 engine_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derives an independent stream seed from (seed, a, b). Used to give every
// (sentence, category) and every bootstrap resample its own substream, so
// parallel scheduling cannot change outputs.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    return splitmix64(splitmix64(seed ^ 0x517cc1b727220a95ULL) ^ splitmix64(a) ^ (b * 0x2545f4914f6cdd1dULL));
}

}  // namespace xsimkit
