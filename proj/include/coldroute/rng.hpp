#ifndef COLDROUTE_RNG_HPP
#define COLDROUTE_RNG_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace coldroute::rng {

/// SplitMix64 (Steele/Lea/Vigna). Chosen over std engines because its output
/// sequence is fully pinned by the algorithm itself, so generated scenarios
/// are identical across platforms, compilers, and standard libraries.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in (0, 1]; safe to feed into log().
    double uniform01_open() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via Box-Muller (cosine branch, two draws consumed).
    double normal() {
        const double u1 = uniform01_open();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

private:
    std::uint64_t state_;
};

/// Derives an independent substream seed from a root seed and a tag path
/// (e.g. {kDelayDraw, scenario, stop}). Every entity draws from its own
/// substream, so adding scenarios, stops, or products never perturbs the
/// draws of entities that already existed.
inline std::uint64_t substream(std::uint64_t root, std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = root;
    for (std::uint64_t tag : path) {
        SplitMix64 g(s ^ (tag * 0x9E3779B97F4A7C15ull + 0x2545F4914F6CDD1Dull));
        s = g.next();
    }
    return s;
}

// Stream tags. Values are arbitrary but frozen: changing them changes
// every generated dataset.
inline constexpr std::uint64_t kDelayDraw = 0x01;
inline constexpr std::uint64_t kAmbientDraw = 0x02;
inline constexpr std::uint64_t kStopRadius = 0x03;
inline constexpr std::uint64_t kStopAngle = 0x04;
inline constexpr std::uint64_t kNominalDelay = 0x05;
inline constexpr std::uint64_t kShelfPerturbation = 0x06;

}  // namespace coldroute::rng

#endif  // COLDROUTE_RNG_HPP
