#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace cytovisc {

/// SplitMix64 output function (Steele, Lea, Flood 2014). Pure integer
/// arithmetic, identical on every platform.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for one random stream, identified by (master, trial, particle):
///
///   s = splitmix64(splitmix64(splitmix64(master) ^ trial) ^ particle)
///
/// Every stream used anywhere in the library goes through this function, so a
/// run is fully determined by its master seed. The formula is part of the
/// file-format contract and must not change.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial,
                                    std::uint64_t particle = 0) noexcept {
    return splitmix64(splitmix64(splitmix64(master) ^ trial) ^ particle);
}

/// Stream index reserved for obstacle placement and initial positions, kept
/// apart from per-particle noise streams.
inline constexpr std::uint64_t kLayoutStream = 0xffff'ffff'ffff'fff0ULL;

/// Gaussian and uniform variates from one mt19937_64 engine.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }

  private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Human-readable generator identification recorded in run metadata.
std::string_view generator_description() noexcept;

}  // namespace cytovisc
