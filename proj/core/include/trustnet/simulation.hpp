#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "trustnet/rng.hpp"
#include "trustnet/scenario.hpp"

namespace trustnet {

/// Behavior transform applied when a witness answers a referral. The ledger
/// always holds what actually happened; distortion exists only in reports.
RatingVector reported_rating(const RatingVector& truth, const BehaviorProfile& profile,
                             SplitMix64& rng);

struct RoundQueryResult {
    unsigned round = 0;  // 1-based
    AgentId requester;
    AgentId target;
    TrustReport report;
    std::vector<WitnessReport> reports;  // as reported, i.e. after behavior transforms
    double observed_rate = 0.0;  // requester's point estimate of the target so far
    bool deviation_flagged = false;
};

struct SimSummary {
    unsigned rounds = 0;
    unsigned queries_per_round = 0;
    /// Mean |trust - target reliability| over rounds, grouped by the
    /// target's behavior class.
    std::map<std::string, double> mean_abs_trust_error_by_behavior;
    /// Mean final weight of consulted witnesses, grouped by behavior class.
    std::map<std::string, double> mean_final_weight_by_behavior;
    unsigned deviation_flag_count = 0;
};

struct SimResult {
    Scenario config;          // echo of the scenario actually run (seed included)
    std::string rng_algorithm;  // pinned generator name
    std::vector<RoundQueryResult> rounds;
    /// requester -> witness -> weight after each round (length == rounds).
    std::map<AgentId, std::map<AgentId, std::vector<double>>> weight_trajectories;
    std::map<AgentId, std::map<AgentId, double>> final_weights;
    SimSummary summary;

    /// Full result document as JSON: {config_echo, rounds[],
    /// weight_trajectories{}, summary{}}. Deterministic byte-for-byte for a
    /// fixed scenario and seed.
    [[nodiscard]] std::string to_json() const;
};

/// Runs the scenario's simulation section. One round is:
///
///   1. Each query target draws transactions_per_round outcomes
///      (success with probability = its reliability); every other agent
///      transacts with it and records those outcomes.
///   2. Each configured (requester, target) query is answered: witnesses are
///      discovered through the graph, their reports pass through their
///      behavior transform, and the trust report is assembled.
///   3. Every consulted witness's weight is updated (on the update_every
///      cadence) with theta(score of its reported vector, requester's
///      observed rate with the target).
///
/// Deterministic given the seed. Throws ScenarioError on invalid
/// configuration, including a missing simulation section.
SimResult run_scenario(const Scenario& scenario);

/// Same, with the seed replaced; the override is echoed in the result.
SimResult run_scenario(const Scenario& scenario, std::uint64_t seed_override);

/// The worked five-witness society as data: witness vectors
/// [2,6],[5,5],[6,2],[0,8],[8,0] with weights 0.5/0.75/0.8/0.01/1.0, a
/// target self-reporting 25 positive of 45 transactions with a community
/// guarantee, and balanced component weights.
Scenario table_scenario();

/// Runs one pooled trust query over table_scenario() and returns the report
/// (trust 0.43, components 0.278/0.153).
TrustReport replay_table_scenario();

/// Writes figure data into out_dir:
///   fig2.csv: per witness (final round of the first query): successful,
///              unsuccessful, reputation score, theta, weighted score.
///   fig3.csv: per (round, query): own component, witness component, total.
/// Comma-separated, header row, LF endings, "." decimal separator.
/// Throws IoError when out_dir is not writable.
void export_figures(const SimResult& result, const std::filesystem::path& out_dir);

}  // namespace trustnet
