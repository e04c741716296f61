#include "trustnet/ledger.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "trustnet/errors.hpp"

namespace trustnet {

void Ledger::record(const RatingEvent& event) {
    if (event.rater == event.ratee) {
        throw std::invalid_argument("rating event: rater '" + event.rater +
                                    "' must not rate itself");
    }
    auto key = std::make_pair(event.rater, event.ratee);
    auto it = index_.find(key);
    if (it != index_.end() && event.tick < it->second.last_tick) {
        throw std::invalid_argument("rating event: tick " + std::to_string(event.tick) +
                                    " regresses for pair (" + event.rater + ", " + event.ratee +
                                    ")");
    }

    events_.push_back(event);
    PairState& state = index_[std::move(key)];
    if (event.outcome == Outcome::successful) {
        state.totals.successful += 1;
    } else {
        state.totals.unsuccessful += 1;
    }
    state.last_tick = event.tick;
    max_tick_ = std::max(max_tick_, event.tick);
}

RatingVector Ledger::aggregate(const AgentId& rater, const AgentId& ratee,
                               std::optional<std::uint64_t> up_to_tick) const {
    if (!up_to_tick) {
        auto it = index_.find(std::make_pair(rater, ratee));
        return it == index_.end() ? RatingVector{} : it->second.totals;
    }
    // Prefix queries scan the event log, the source of truth.
    RatingVector v;
    for (const RatingEvent& event : events_) {
        if (event.tick > *up_to_tick || event.rater != rater || event.ratee != ratee) {
            continue;
        }
        if (event.outcome == Outcome::successful) {
            v.successful += 1;
        } else {
            v.unsuccessful += 1;
        }
    }
    return v;
}

bool Ledger::has_history(const AgentId& rater, const AgentId& ratee) const {
    return index_.contains(std::make_pair(rater, ratee));
}

void Ledger::save(std::ostream& out) const {
    for (const RatingEvent& event : events_) {
        nlohmann::ordered_json line;
        line["rater"] = event.rater;
        line["ratee"] = event.ratee;
        line["outcome"] = event.outcome == Outcome::successful ? "S" : "U";
        line["t"] = event.tick;
        out << line.dump() << '\n';
    }
}

void Ledger::save(const std::filesystem::path& destination) const {
    std::ofstream out(destination, std::ios::binary);
    if (!out) {
        throw IoError("cannot open ledger file for writing: " + destination.string());
    }
    save(out);
    if (!out) {
        throw IoError("failed while writing ledger file: " + destination.string());
    }
}

Ledger Ledger::load(std::istream& in) {
    Ledger ledger;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const std::string where = "ledger line " + std::to_string(line_no);
        nlohmann::json record_json;
        try {
            record_json = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& err) {
            throw std::runtime_error(where + ": " + err.what());
        }

        RatingEvent event;
        try {
            event.rater = record_json.at("rater").get<std::string>();
            event.ratee = record_json.at("ratee").get<std::string>();
            event.tick = record_json.at("t").get<std::uint64_t>();
            const auto outcome = record_json.at("outcome").get<std::string>();
            if (outcome == "S") {
                event.outcome = Outcome::successful;
            } else if (outcome == "U") {
                event.outcome = Outcome::unsuccessful;
            } else {
                throw std::runtime_error(where + ": outcome must be \"S\" or \"U\", got \"" +
                                         outcome + "\"");
            }
        } catch (const nlohmann::json::exception& err) {
            throw std::runtime_error(where + ": " + err.what());
        }

        try {
            ledger.record(event);
        } catch (const std::invalid_argument& err) {
            throw std::runtime_error(where + ": " + err.what());
        }
    }
    return ledger;
}

Ledger Ledger::load(const std::filesystem::path& source) {
    std::ifstream in(source, std::ios::binary);
    if (!in) {
        throw IoError("cannot open ledger file: " + source.string());
    }
    return load(in);
}

RatingVector pooled_aggregate(std::span<const RatingVector> vectors) {
    RatingVector sum;
    for (const RatingVector& v : vectors) {
        sum += v;
    }
    return sum;
}

}  // namespace trustnet
