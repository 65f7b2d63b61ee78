#pragma once

#include <cmath>
#include <cstdint>

namespace mcv2x {

// Counter-based splittable generator built on the SplitMix64 finalizer.
// A stream is (key, counter); child streams derive a fresh key from the
// parent key and a path index, so every (iteration, vehicle, link) tuple
// can own an independent stream whose output does not depend on execution
// order or thread count.
class RngStream {
public:
    RngStream() : key_(0) {}

    static RngStream from_seed(std::uint64_t seed) { return RngStream(mix(seed ^ kSeedTag)); }

    /// Derive an independent substream for path index `index`.
    RngStream child(std::uint64_t index) const {
        return RngStream(mix(mix(key_ ^ (index + kChildTag)) + kGolden));
    }
    RngStream child(std::uint64_t a, std::uint64_t b) const { return child(a).child(b); }

    std::uint64_t next_u64() {
        counter_ += kGolden;
        return mix(key_ ^ counter_);
    }

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1]; safe as a log() argument.
    double uniform_open01() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    /// Exponential with the given rate (mean 1/rate).
    double exponential(double rate) { return -std::log(uniform_open01()) / rate; }

    /// Box-Muller; the paired deviate is cached within the stream.
    double normal(double mean, double stddev) {
        if (has_spare_) {
            has_spare_ = false;
            return mean + stddev * spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform_open01()));
        const double theta = 6.283185307179586476925286766559 * uniform01();
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return mean + stddev * r * std::cos(theta);
    }

private:
    explicit RngStream(std::uint64_t key) : key_(key) {}

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
    static constexpr std::uint64_t kSeedTag = 0x5851F42D4C957F2Dull;
    static constexpr std::uint64_t kChildTag = 0x632BE59BD9B4E019ull;

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace mcv2x
