#pragma once

#include <cstdint>
#include <array>
#include <vector>

namespace nsplit {

// SplitMix64, used only to expand seeds into engine state.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

/// A (seed, stream) pair. Equal pairs yield identical sample sequences on
/// every platform; distinct streams give independent sequences, so parallel
/// trials can each take their own stream off one user-supplied seed.
struct RngSeed {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    RngSeed with_stream(std::uint64_t s) const { return {seed, s}; }
};

// xoshiro256**; integer-only so sequences are platform-independent.
class Rng {
public:
    Rng() : Rng(RngSeed{}) {}
    explicit Rng(RngSeed rs) {
        SplitMix64 sm(rs.seed ^ (0x9E3779B97F4A7C15ULL * (rs.stream + 1)));
        for (auto& w : s_) w = sm.next();
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5ULL, 7) * 9ULL;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform value in [0, bound) via rejection; unbiased for any bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = -bound % bound;
        std::uint64_t x;
        do { x = next_u64(); } while (x < threshold);
        return x % bound;
    }

    int below_int(int bound) { return static_cast<int>(below(static_cast<std::uint64_t>(bound))); }

    double uniform01() { return (next_u64() >> 11) * (1.0 / 9007199254740992.0); }

    // Fisher-Yates; uniform over all permutations of v.
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::array<std::uint64_t, 4> s_{};
};

} // namespace nsplit
