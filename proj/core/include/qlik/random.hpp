#ifndef QLIK_RANDOM_HPP_
#define QLIK_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace qlik {

using Rng = std::mt19937_64;

// Uniform on the open interval (0, 1) from the top 53 bits of one draw.
// Unlike std::uniform_real_distribution this is bit-identical across
// standard library implementations.
inline double uniform_open01(Rng& rng)
{
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

inline double uniform_in(Rng& rng, double lo, double hi)
{
    return lo + (hi - lo) * uniform_open01(rng);
}

// Integer in [0, bound). The modulo bias is below 2^-40 for bound < 2^24.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound)
{
    return rng() % bound;
}

// splitmix64 finalizer; decorrelates seeds that differ in a few bits.
inline std::uint64_t mix_seed(std::uint64_t seed)
{
    seed += 0x9e3779b97f4a7c15ULL;
    seed = (seed ^ (seed >> 30)) * 0xbf58476d1ce4e5b9ULL;
    seed = (seed ^ (seed >> 27)) * 0x94d049bb133111ebULL;
    return seed ^ (seed >> 31);
}

inline Rng make_rng(std::uint64_t seed) { return Rng(mix_seed(seed)); }

}  // namespace qlik

#endif  // QLIK_RANDOM_HPP_
