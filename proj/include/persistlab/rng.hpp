#pragma once

#include <cmath>
#include <cstdint>

namespace persistlab {

/// Master seed for a Monte Carlo campaign. Replicate i always draws from the
/// stream derived from (master, i), so results do not depend on execution
/// order or thread count.
struct Seed {
    std::uint64_t master = 0;
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
}  // namespace detail

/// xoshiro256++ stream. Seeding runs splitmix64 from
/// master + (replicate+1)*0x9E3779B97F4A7C15, the documented mixing function
/// of (master, replicate-index): identical (master, i) pairs give identical
/// streams everywhere.
class RngStream {
public:
    RngStream() : RngStream(Seed{0}, 0) {}

    RngStream(Seed seed, std::uint64_t replicate) {
        std::uint64_t sm = seed.master + 0x9E3779B97F4A7C15ULL * (replicate + 1);
        for (auto& word : state_) word = detail::splitmix64(sm);
    }

    static RngStream for_replicate(Seed seed, std::uint64_t replicate) {
        return RngStream(seed, replicate);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on the open interval (0, 1); never returns an exact endpoint.
    double uniform_open() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Exponential(rate) via inversion; strictly positive.
    double exponential(double rate) { return -std::log(uniform_open()) / rate; }

    bool bernoulli(double p) { return uniform() < p; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

}  // namespace persistlab
