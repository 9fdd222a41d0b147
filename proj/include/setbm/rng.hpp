#pragma once

#include <cmath>
#include <cstdint>

#include "setbm/errors.hpp"

namespace setbm {

// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Counter-based stream: draw k of stream (seed, id) is mix64(key + k*gamma).
// Streams can be created for any (seed, id) pair independently, which is what
// makes the Monte Carlo kernels deterministic under any thread count.
class RngStream {
public:
    static RngStream from(std::uint64_t seed, std::uint64_t stream_id = 0) {
        RngStream s;
        s.key_ = mix64(seed) ^ mix64(stream_id * 0xD6E8FEB86659FD93ull + 0x2545F4914F6CDD1Dull);
        return s;
    }

    std::uint64_t next_u64() {
        ctr_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = key_ + ctr_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform on [0,1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on the open interval (0,1); safe input for inverse CDFs.
    double uniform_open() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double normal() { return normal_quantile(uniform_open()); }

    // Inverse-CDF sampling: -ln(U)/lambda.
    double exponential(double rate) {
        if (!(rate > 0.0)) throw NonPositiveLambda("exponential: rate must be > 0");
        return -std::log(uniform_open()) / rate;
    }

    // Acklam's rational approximation of the standard normal quantile
    // (|relative error| < 1.15e-9 across the open unit interval).
    static double normal_quantile(double p);

private:
    std::uint64_t key_ = 0;
    std::uint64_t ctr_ = 0;
};

// Sub-seed derivation for nested experiments (per level, per cell, ...).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    return mix64(seed ^ mix64(salt + 0x9E3779B97F4A7C15ull));
}

}  // namespace setbm
