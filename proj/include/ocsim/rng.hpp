#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ocsim {

// Deterministic random source. All stochastic choices in the simulator go
// through this wrapper so that a (seed, stream) pair fully determines a run.
// Distribution helpers are hand-rolled on top of the raw 64-bit stream
// because the std::* distribution objects are not bit-stable across
// standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1). 53-bit mantissa construction.
    double u01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n). n must be > 0. Rejection-free modulo is
    // fine here: n is tiny relative to 2^64, bias is < 2^-40.
    std::uint64_t uniform_index(std::uint64_t n) {
        return next_u64() % n;
    }

    // Exponential with the given mean. Guards the log(0) corner.
    double exponential(double mean) {
        double u = u01();
        if (u <= 0.0) u = 0x1.0p-53;
        return -mean * std::log(u);
    }

    bool bernoulli(double p) { return u01() < p; }

    // Derives an independent substream seed from a base seed and a stream
    // index (splitmix64 finalizer). Lets one run seed give decorrelated
    // streams for graph generation, workload choice and think times.
    static std::uint64_t substream_seed(std::uint64_t base, std::uint64_t stream) {
        std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace ocsim
