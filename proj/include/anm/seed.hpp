#ifndef ANM_SEED_HPP
#define ANM_SEED_HPP

#include <cstdint>
#include <random>

namespace anm {

using Rng = std::mt19937_64;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Child seed for an independent stream. Streams are keyed by a fixed id, so
/// introducing a new consumer never shifts the seeds handed to existing ones.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept
{
    return mix64(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

namespace stream {
inline constexpr std::uint64_t covariate = 1;
inline constexpr std::uint64_t noise = 2;
inline constexpr std::uint64_t split = 3;
inline constexpr std::uint64_t cv_folds = 4;
inline constexpr std::uint64_t oracle_mc = 5;
} // namespace stream

} // namespace anm

#endif
