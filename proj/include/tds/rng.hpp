#pragma once
#include <cmath>
#include <cstdint>
#include <random>

namespace tds {

// Seeded, stream-splittable random source.
//
// Algorithm: the (seed, stream_id) pair is mixed through SplitMix64 to seed a
// std::mt19937_64 engine (the mt19937_64 sequence is fully specified by the
// C++ standard, so streams are bit-identical across platforms). Normal
// variates come from an in-repo Box-Muller transform rather than
// std::normal_distribution, whose algorithm is implementation-defined.
//
// Contract: same (seed, stream_id) => identical sample sequence. Concurrent
// consumers must use distinct stream ids.
class SeededSampler {
public:
    explicit SeededSampler(std::uint64_t seed, std::uint64_t stream_id = 0)
        : seed_(seed), stream_(stream_id), engine_(mix(seed, stream_id)) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_; }

    // Fresh sampler on a derived stream; does not disturb this sampler's state.
    SeededSampler split(std::uint64_t substream) const {
        return SeededSampler(seed_, mix(stream_, substream));
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0,1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; caches the second variate.
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.141592653589793238462643383279502884 * u2;
        cached_ = r * std::sin(theta);
        has_cached_ = true;
        return r * std::cos(theta);
    }

private:
    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        std::uint64_t x = a;
        std::uint64_t h = splitmix64(x);
        x ^= b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return splitmix64(x);
    }

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
    bool has_cached_ = false;
    double cached_ = 0.0;
};

} // namespace tds
