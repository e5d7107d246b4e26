#pragma once

#include <cstdint>

namespace decolens {

// Deterministic, platform-independent random stream: xoshiro256** seeded
// through splitmix64. The algorithm and constants are fixed here so that
// identical seeds reproduce identical runs on any build.
//
// Substreams for ensemble run r are derived as
//   state0 = splitmix64(seed XOR (0x9E3779B97F4A7C15 * (r + 1)))
// which decorrelates run indices without shared state.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) { reseed(seed); }

    static RandomStream substream(std::uint64_t seed, std::uint64_t index);

    void reseed(std::uint64_t seed);

    std::uint64_t next_u64();

    // uniform in [0, 1), 53-bit resolution
    double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

private:
    std::uint64_t s_[4] = {};
};

// splitmix64 mixing function (public: used for stream derivation and
// content-hash seeding in the harness).
std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace decolens
