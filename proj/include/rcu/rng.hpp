#pragma once

// Counter-based random numbers.
//
// Every draw is a pure function of (key, stream, counter). Philox4x32-10
// supplies the bits; uniforms take the top 53 bits of a 64-bit word, normals
// use the cosine branch of Box-Muller on two uniforms. None of the <random>
// distributions are used, so the streams are identical across platforms.

#include <array>
#include <cstdint>

namespace rcu {

/// Philox4x32-10 block function.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// SplitMix64 finalizer; used to derive independent seeds from a parent seed and a tag.
std::uint64_t mix64(std::uint64_t x);

/// Child seed for a named sub-stream (e.g. "eval", "features").
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

/// Sequential view of the counter space for one (seed, stream) pair.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

    /// 128 fresh bits, returned as two 64-bit words.
    std::array<std::uint64_t, 2> next_block();

    /// Uniform on [0, 1).
    double uniform();
    /// Uniform on (0, 1]; safe as a logarithm argument.
    double uniform_pos();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Standard normal.
    double normal();
    /// Integer uniform on [0, n).
    std::uint64_t below(std::uint64_t n);

    std::uint64_t draws() const { return counter_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
};

}  // namespace rcu
