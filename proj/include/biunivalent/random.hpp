#ifndef BIUNIVALENT_RANDOM_HPP
#define BIUNIVALENT_RANDOM_HPP

// Portable deterministic randomness. std::mt19937_64 is specified bit-exactly
// by the standard; the distributions in <random> are not, so the conversions
// to floating point live here.

#include <cstdint>
#include <random>

namespace biuni
{

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Seed for sample `index` of a campaign seeded with `seed`. Independent of
// scheduling, so parallel and serial campaigns draw identical samples.
inline constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept
{
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

using engine = std::mt19937_64;

// Uniform on the open interval (0, 1), 52-bit resolution.
inline double uniform_open01(engine &eng)
{
    return (static_cast<double>(eng() >> 12) + 0.5) * 0x1.0p-52;
}

// Uniform on [0, 1), 53-bit resolution.
inline double uniform01(engine &eng)
{
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

} // namespace biuni

#endif
