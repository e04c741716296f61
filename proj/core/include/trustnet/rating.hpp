#pragma once

#include <cstdint>
#include <string>

namespace trustnet {

using AgentId = std::string;

/// Pair of successful/unsuccessful transaction counts one agent holds
/// about another. Addition is componentwise.
struct RatingVector {
    std::uint64_t successful = 0;
    std::uint64_t unsuccessful = 0;

    [[nodiscard]] constexpr std::uint64_t total() const noexcept {
        return successful + unsuccessful;
    }

    constexpr RatingVector& operator+=(const RatingVector& other) noexcept {
        successful += other.successful;
        unsuccessful += other.unsuccessful;
        return *this;
    }

    friend constexpr RatingVector operator+(RatingVector lhs, const RatingVector& rhs) noexcept {
        lhs += rhs;
        return lhs;
    }

    friend constexpr bool operator==(const RatingVector&, const RatingVector&) noexcept = default;
};

}  // namespace trustnet
