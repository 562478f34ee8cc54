#pragma once

#include <cstdint>

namespace bcdi {

/// SplitMix64: a tiny counter-based generator. `split` derives independent
/// child streams from a parent seed so that every consumer of randomness gets
/// its own reproducible sequence regardless of call order elsewhere.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    [[nodiscard]] SplitMix64 split(std::uint64_t stream) const {
        SplitMix64 child(state_ ^ (0xD1B54A32D192ED03ULL * (stream + 1)));
        child.next();
        return child;
    }

private:
    std::uint64_t state_;
};

} // namespace bcdi
