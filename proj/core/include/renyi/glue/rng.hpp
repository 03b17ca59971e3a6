#pragma once

#include <cstdint>
#include <random>

namespace renyi::glue {

/// splitmix64 step; used to spread seeds, never as the sampling engine.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Stream seed for one window: a pure function of (master seed, window index),
/// so windows can run in any order or concurrently with identical output.
inline std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master;
    (void)splitmix64(s);
    s ^= 0x632be59bd9b4e019ULL * (index + 1);
    return splitmix64(s);
}

/// mt19937_64 stream with explicit double conversions, so the sample stream
/// is a deterministic function of the seed on any platform.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    double uniform01() {
        // 53-bit mantissa in (0, 1]
        return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace renyi::glue
