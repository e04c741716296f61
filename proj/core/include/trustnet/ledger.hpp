#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "trustnet/rating.hpp"

namespace trustnet {

enum class Outcome : std::uint8_t { successful, unsuccessful };

struct RatingEvent {
    AgentId rater;
    AgentId ratee;
    Outcome outcome = Outcome::successful;
    std::uint64_t tick = 0;

    friend bool operator==(const RatingEvent&, const RatingEvent&) = default;
};

/// Append-only record of per-transaction ratings. The event log is the
/// source of truth; a running per-pair index answers full-history
/// aggregation in O(log n). Single writer, any number of concurrent readers.
class Ledger {
  public:
    /// Appends an event. Throws std::invalid_argument when the rater rates
    /// itself or the pair's timestamps would regress.
    void record(const RatingEvent& event);

    /// Componentwise sum of this pair's events, optionally restricted to
    /// tick <= up_to_tick. Unknown pairs yield [0,0].
    [[nodiscard]] RatingVector aggregate(const AgentId& rater, const AgentId& ratee,
                                         std::optional<std::uint64_t> up_to_tick = std::nullopt) const;

    /// True if the pair has at least one event.
    [[nodiscard]] bool has_history(const AgentId& rater, const AgentId& ratee) const;

    [[nodiscard]] const std::vector<RatingEvent>& events() const noexcept { return events_; }
    [[nodiscard]] std::uint64_t max_tick() const noexcept { return max_tick_; }

    /// JSON Lines, one event per line:
    ///   {"rater": "<id>", "ratee": "<id>", "outcome": "S"|"U", "t": <integer>}
    /// Field order fixed as listed, UTF-8, LF line endings.
    void save(std::ostream& out) const;
    void save(const std::filesystem::path& destination) const;

    /// Inverse of save. Throws trustnet::IoError when the source cannot be
    /// opened and std::runtime_error with a line diagnostic on malformed
    /// records.
    static Ledger load(std::istream& in);
    static Ledger load(const std::filesystem::path& source);

    friend bool operator==(const Ledger& a, const Ledger& b) { return a.events_ == b.events_; }

  private:
    struct PairState {
        RatingVector totals;
        std::uint64_t last_tick = 0;
    };

    std::vector<RatingEvent> events_;
    std::map<std::pair<AgentId, AgentId>, PairState> index_;
    std::uint64_t max_tick_ = 0;
};

/// Componentwise sum over a list of rating vectors; empty input gives [0,0].
RatingVector pooled_aggregate(std::span<const RatingVector> vectors);

}  // namespace trustnet
