#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trustnet/aggregate.hpp"
#include "trustnet/ledger.hpp"
#include "trustnet/referral.hpp"
#include "trustnet/trust.hpp"

namespace trustnet {

/// How an agent answers referrals when simulated. honest reports its true
/// ledger vector; liar reports the swapped vector [U,S]; noisy flips each
/// count unit independently with probability noise_level.
enum class Behavior { honest, liar, noisy };

std::string_view to_string(Behavior behavior);

struct BehaviorProfile {
    Behavior kind = Behavior::honest;
    double noise_level = 0.0;
};

struct AgentSpec {
    AgentId id;
    double reliability = 1.0;  // probability a transaction with this agent succeeds
    BehaviorProfile behavior;
    AgentRecord record;  // self-reported totals and guarantee flag
};

struct QuerySpec {
    AgentId requester;
    AgentId target;
    unsigned depth_limit = 1;
    TrustWeights weights;
    AgrStrategy strategy = AgrStrategy::pooled;
};

struct QueryPair {
    AgentId requester;
    AgentId target;
};

struct SimulationSpec {
    unsigned rounds = 1;
    unsigned transactions_per_round = 1;
    std::uint64_t seed = 0;
    unsigned update_every = 1;  // weight-update cadence, in rounds
    double deviation_threshold = 0.25;
    std::vector<QueryPair> queries;  // defaults to the scenario's main query pair
};

/// A complete society description: agents, acquaintance edges, seed rating
/// events, initial witness weights (applied to every requester's table), the
/// trust query to answer, and an optional simulation section.
struct Scenario {
    std::vector<AgentSpec> agents;
    std::vector<std::pair<AgentId, AgentId>> edges;
    std::vector<RatingEvent> seed_events;
    std::map<AgentId, double> witness_weights;
    QuerySpec query;
    std::optional<SimulationSpec> simulation;

    [[nodiscard]] const AgentSpec* find_agent(const AgentId& id) const;
};

/// Parses a scenario from JSON text. Unknown keys and type mismatches are
/// rejected with the offending field named. Throws ScenarioError.
Scenario parse_scenario(const std::string& json_text);

/// Reads and parses a scenario file. Throws IoError when the file cannot be
/// read, ScenarioError on malformed content.
Scenario load_scenario(const std::filesystem::path& path);

/// All invariant violations, one message per finding, each naming the field.
/// Empty means the scenario is valid.
std::vector<std::string> validate(const Scenario& scenario);

/// Throws ScenarioError listing every validation finding.
void ensure_valid(const Scenario& scenario);

// Materialized views consumed by the query and simulation paths.
ReferralGraph build_graph(const Scenario& scenario);
Ledger build_ledger(const Scenario& scenario);
std::map<AgentId, AgentRecord> build_records(const Scenario& scenario);
WeightTable build_weight_table(const Scenario& scenario);

/// Serializes the scenario back to JSON (used for the result file's config
/// echo); parse_scenario(serialize_scenario(s)) round-trips.
std::string serialize_scenario(const Scenario& scenario);

}  // namespace trustnet
