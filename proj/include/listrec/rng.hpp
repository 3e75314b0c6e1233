#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace listrec {

/// Seeded generator with a fixed, platform-independent output stream.
/// std::mt19937_64's raw sequence is pinned by the standard; the bounded and
/// real draws below are our own so results do not depend on the standard
/// library's distribution implementations.
class Rng {
public:
    static constexpr std::string_view kName = "mt19937_64-v1";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound), rejection sampled. bound must be > 0.
    std::uint64_t uniform(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    /// Uniform integer in [lo, hi].
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(uniform(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform_real() { return static_cast<double>(engine_() >> 11U) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

}  // namespace listrec
