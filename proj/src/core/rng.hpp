#pragma once

// Deterministic, platform-independent random source for task generation and
// experiments. Core generator is xoshiro256** seeded through the splitmix64
// finalizer; substreams are derived by hashing (seed, tag, index), so any
// task/set can be regenerated in isolation.
//
// None of <random>'s distributions are used: their output is not pinned by
// the standard, and generated task files must be byte-identical everywhere.

#include <array>
#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace dagsched {

inline std::uint64_t splitmix64_mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Substream key derivation; pure function of its inputs.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag,
                                 std::uint64_t index = 0) {
    return splitmix64_mix(splitmix64_mix(seed ^ splitmix64_mix(tag)) + index);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& w : state_) w = splitmix64_mix(x++);
    }

    static Rng derive(std::uint64_t seed, std::uint64_t tag, std::uint64_t index = 0) {
        return Rng(derive_seed(seed, tag, index));
    }

    std::uint64_t next() {
        auto rotl = [](std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Unbiased value in [0, bound); bound >= 1.
    std::uint64_t uniform_u64(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t threshold = (-bound) % bound;  // 2^64 mod bound
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // Inclusive range; consumes nothing when lo == hi.
    long long uniform_int(long long lo, long long hi) {
        if (lo > hi) throw Error(Errc::invalid_argument, "empty integer range");
        if (lo == hi) return lo;
        return lo + static_cast<long long>(
                        uniform_u64(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    // Bernoulli draw with rational probability (quantized to 2^-64).
    bool bernoulli(const Rat& p) {
        if (p <= 0) return false;
        if (p >= 1) return true;
        mpz_class threshold = (p.get_num() << 64) / p.get_den();
        const std::uint64_t r = next();
        mpz_class draw(static_cast<unsigned long>(r >> 32));
        draw <<= 32;
        draw += static_cast<unsigned long>(r & 0xFFFFFFFFULL);
        return draw < threshold;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = uniform_u64(i);
            std::swap(v[i - 1], v[j]);
        }
    }

  private:
    std::array<std::uint64_t, 4> state_{};
};

}  // namespace dagsched
