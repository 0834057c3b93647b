#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace ctspd {

// All randomized components draw through this wrapper so results are
// reproducible across platforms. std::mt19937_64 has a pinned algorithm;
// the bounded-int mapping is done by hand because the standard library
// distributions are not portable across implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform integer in [0, bound), bound >= 1. Rejection sampling keeps the
    // draw exactly uniform.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = eng_();
        } while (v >= limit);
        return v % bound;
    }

    // Uniform integer in [lo, hi] inclusive.
    int range(int lo, int hi) { return lo + (int)below((std::uint64_t)(hi - lo + 1)); }

    // Bernoulli draw with probability num/den.
    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  private:
    std::mt19937_64 eng_;
};

// Small splittable generator for seeding and for grouping assignment, where
// a full Mersenne Twister state is overkill.
class SplitMix {
  public:
    explicit SplitMix(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

  private:
    std::uint64_t state_;
};

// FNV-1a, used to derive stable per-label seeds.
inline std::uint64_t hash_label(const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::uint64_t seed_for_label(std::uint64_t base, const std::string& label) {
    return base ^ hash_label(label);
}

}  // namespace ctspd
