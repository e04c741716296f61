#pragma once

#include <cstdint>
#include <string_view>

namespace trustnet {

/// SplitMix64 (Steele, Lea & Flood). Fully specified by its constants, so a
/// seed reproduces the same stream everywhere this code compiles; the
/// standard library's distributions carry no such guarantee. The algorithm
/// name is echoed into every simulation result file.
class SplitMix64 {
  public:
    static constexpr std::string_view kAlgorithmName = "splitmix64";

    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) noexcept { return next_double() < p; }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t next_below(std::uint64_t bound) noexcept { return next() % bound; }

  private:
    std::uint64_t state_;
};

}  // namespace trustnet
