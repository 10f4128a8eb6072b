#pragma once

#include <cstdint>

namespace gldens {

// Counter-based generator: every draw is a pure function of (seed, stream,
// index), so parallel and serial evaluation orders produce identical values.
// All randomness in the toolkit flows from a single 64-bit seed through this.
struct CounterRng {
    std::uint64_t seed = 0;

    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t raw(std::uint64_t stream, std::uint64_t index) const {
        return mix(mix(seed ^ (stream * 0x9e3779b97f4a7c15ULL)) + index);
    }

    // uniform in [0,1)
    double u01(std::uint64_t stream, std::uint64_t index) const {
        return static_cast<double>(raw(stream, index) >> 11) * 0x1.0p-53;
    }

    double uniform(std::uint64_t stream, std::uint64_t index, double lo, double hi) const {
        return lo + u01(stream, index) * (hi - lo);
    }
};

// Sequential view over one stream, for sampling loops.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream) : rng_{seed}, stream_(stream) {}

    double u01() { return rng_.u01(stream_, index_++); }
    double uniform(double lo, double hi) { return lo + u01() * (hi - lo); }
    std::uint64_t bits() { return rng_.raw(stream_, index_++); }

private:
    CounterRng rng_;
    std::uint64_t stream_ = 0;
    std::uint64_t index_ = 0;
};

} // namespace gldens
