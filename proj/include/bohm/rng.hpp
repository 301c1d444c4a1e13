#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace bohm {

// Counter-keyed SplitMix64 streams.
//
// Stream construction: stream k of seed s starts from
//     state0 = mix(s ^ mix(k + GAMMA)),
// where mix is the SplitMix64 output finalizer and GAMMA = 0x9e3779b97f4a7c15.
// Draw j of a stream is SplitMix64 step j from state0. Uniform doubles map
// the top 53 bits to (0,1]; normal deviates use the Box-Muller transform.
//
// Independent streams per sample index make ensemble runs embarrassingly
// parallel with results that do not depend on the thread partition. Bitwise
// reproducibility holds within one build; other implementations of the same
// scheme reproduce the statistics distributionally.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Stream `index` of `seed`; streams are mutually independent.
    static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
        return SplitMix64(mix(seed ^ mix(index + kGamma)));
    }

    std::uint64_t next() {
        state_ += kGamma;
        return mix(state_);
    }

    /// Uniform double in (0, 1]; never returns 0, so log() is safe.
    double uniform01() {
        return static_cast<double>((next() >> 11) + 1) * 0x1p-53;
    }

    /// Pair of independent standard normal deviates (Box-Muller).
    std::pair<double, double> normal_pair() {
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(a), r * std::sin(a)};
    }

private:
    std::uint64_t state_;
};

}  // namespace bohm
