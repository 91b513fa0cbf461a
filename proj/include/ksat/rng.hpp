#pragma once

#include <cstdint>
#include <random>

namespace ksat {

// All randomness flows through rng_stream. A stream is derived from a 64-bit
// master seed and a stream index: both are whitened with splitmix64 and the
// four 32-bit words feed a seed_seq for mt19937_64 (period 2^19937-1).
// Distinct (seed, stream) pairs therefore get decorrelated engines, and
// per-trial substreams make parallel runs independent of the worker count.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

class rng_stream {
public:
    explicit rng_stream(std::uint64_t seed, std::uint64_t stream = 0) {
        std::uint64_t h1 = splitmix64(seed);
        std::uint64_t h2 = splitmix64(h1 ^ splitmix64(stream ^ 0x632BE59BD9B4E019ULL));
        std::seed_seq ss{static_cast<std::uint32_t>(h1), static_cast<std::uint32_t>(h1 >> 32),
                         static_cast<std::uint32_t>(h2), static_cast<std::uint32_t>(h2 >> 32)};
        engine_.seed(ss);
    }

    std::uint64_t raw() { return engine_(); }

    // uniform in [0, bound), bound >= 1
    std::uint64_t below(std::uint64_t bound) {
        return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
    }

    // uniform in [0, bound) for bounds beyond 64 bits (exact, rejection sampling)
    unsigned __int128 below128(unsigned __int128 bound) {
        if (bound <= ~std::uint64_t(0)) return below(static_cast<std::uint64_t>(bound));
        const unsigned __int128 full = ~static_cast<unsigned __int128>(0);
        const unsigned __int128 limit = full - full % bound; // multiple of bound
        for (;;) {
            unsigned __int128 x = (static_cast<unsigned __int128>(engine_()) << 64) | engine_();
            if (x < limit) return x % bound;
        }
    }

    bool coin() { return (engine_() >> 63) != 0; }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

inline rng_stream substream(std::uint64_t seed, std::uint64_t index) { return rng_stream(seed, index); }

} // namespace ksat
