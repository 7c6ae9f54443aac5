#include "rcu/rng.hpp"

#include <cmath>
#include <numbers>

namespace rcu {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo)
{
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

inline double to_unit(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key)
{
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) { return mix64(seed ^ mix64(tag)); }

std::array<std::uint64_t, 2> RandomStream::next_block()
{
    const std::uint64_t c = counter_++;
    const auto out = philox4x32(
        {static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32),
         static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
        {static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)});
    return {(static_cast<std::uint64_t>(out[0]) << 32) | out[1],
            (static_cast<std::uint64_t>(out[2]) << 32) | out[3]};
}

double RandomStream::uniform() { return to_unit(next_block()[0]); }

double RandomStream::uniform_pos() { return 1.0 - uniform(); }

double RandomStream::normal()
{
    const auto b = next_block();
    const double u1 = 1.0 - to_unit(b[0]);
    const double u2 = to_unit(b[1]);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t RandomStream::below(std::uint64_t n)
{
    // Lemire's multiply-shift; the residual bias is below 2^-64 * n and irrelevant here.
    const unsigned __int128 p = static_cast<unsigned __int128>(next_block()[0]) * n;
    return static_cast<std::uint64_t>(p >> 64);
}

}  // namespace rcu
