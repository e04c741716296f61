#include "trustnet/simulation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <system_error>

#include "json.hpp"

#include "scenario_json.hpp"
#include "trustnet/errors.hpp"
#include "trustnet/log.hpp"

namespace trustnet {

namespace {

// Shortest round-trip representation; keeps result files byte-stable.
std::string format_double(double value) {
    char buffer[32];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, end);
}

struct QueryState {
    QueryPair pair;
    const AgentSpec* target_spec = nullptr;
};

nlohmann::ordered_json report_to_json(const RoundQueryResult& entry) {
    nlohmann::ordered_json row;
    row["round"] = entry.round;
    row["requester"] = entry.requester;
    row["target"] = entry.target;
    row["trust"] = entry.report.trust;
    row["own_component"] = entry.report.own_component;
    row["witness_component"] = entry.report.witness_component;
    row["agr"] = entry.report.agr;
    row["deviation"] = entry.report.deviation;
    row["deviation_flagged"] = entry.deviation_flagged;
    row["observed_rate"] = entry.observed_rate;
    row["per_witness"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < entry.report.per_witness.size(); ++i) {
        const WitnessContribution& contribution = entry.report.per_witness[i];
        nlohmann::ordered_json w;
        w["witness"] = contribution.witness;
        w["successful"] = entry.reports[i].rating.successful;
        w["unsuccessful"] = entry.reports[i].rating.unsuccessful;
        w["raw_score"] = contribution.raw_score;
        w["theta"] = contribution.theta;
        w["weighted_score"] = contribution.weighted_score;
        row["per_witness"].push_back(std::move(w));
    }
    return row;
}

}  // namespace

RatingVector reported_rating(const RatingVector& truth, const BehaviorProfile& profile,
                             SplitMix64& rng) {
    switch (profile.kind) {
        case Behavior::honest:
            return truth;
        case Behavior::liar:
            return {truth.unsuccessful, truth.successful};
        case Behavior::noisy: {
            std::uint64_t success_flips = 0;
            for (std::uint64_t i = 0; i < truth.successful; ++i) {
                if (rng.bernoulli(profile.noise_level)) {
                    ++success_flips;
                }
            }
            std::uint64_t failure_flips = 0;
            for (std::uint64_t i = 0; i < truth.unsuccessful; ++i) {
                if (rng.bernoulli(profile.noise_level)) {
                    ++failure_flips;
                }
            }
            return {truth.successful - success_flips + failure_flips,
                    truth.unsuccessful - failure_flips + success_flips};
        }
    }
    return truth;
}

SimResult run_scenario(const Scenario& scenario, std::uint64_t seed_override) {
    Scenario adjusted = scenario;
    if (!adjusted.simulation) {
        throw ScenarioError("scenario.simulation: missing required field (nothing to simulate)");
    }
    adjusted.simulation->seed = seed_override;
    return run_scenario(adjusted);
}

SimResult run_scenario(const Scenario& scenario) {
    ensure_valid(scenario);
    if (!scenario.simulation) {
        throw ScenarioError("scenario.simulation: missing required field (nothing to simulate)");
    }
    const SimulationSpec& sim = *scenario.simulation;

    const ReferralGraph graph = build_graph(scenario);
    Ledger ledger = build_ledger(scenario);
    const std::map<AgentId, AgentRecord> records = build_records(scenario);

    std::vector<QueryPair> query_pairs = sim.queries;
    if (query_pairs.empty()) {
        query_pairs.push_back({scenario.query.requester, scenario.query.target});
    }

    // Per-requester credibility tables, all seeded from the scenario table.
    std::map<AgentId, WeightTable> tables;
    std::vector<QueryState> queries;
    for (const QueryPair& pair : query_pairs) {
        tables.try_emplace(pair.requester, build_weight_table(scenario));
        queries.push_back({pair, scenario.find_agent(pair.target)});
    }

    // Distinct targets in first-appearance order; one outcome stream each per
    // round, observed identically by every partner.
    std::vector<const AgentSpec*> targets;
    for (const QueryState& q : queries) {
        if (std::find(targets.begin(), targets.end(), q.target_spec) == targets.end()) {
            targets.push_back(q.target_spec);
        }
    }

    SimResult result;
    result.config = scenario;
    result.rng_algorithm = std::string(SplitMix64::kAlgorithmName);
    result.summary.rounds = sim.rounds;
    result.summary.queries_per_round = static_cast<unsigned>(queries.size());

    SplitMix64 rng(sim.seed);
    const std::uint64_t tick_base = ledger.events().empty() ? 0 : ledger.max_tick() + 1;

    for (unsigned round = 1; round <= sim.rounds; ++round) {
        const std::uint64_t tick = tick_base + round - 1;

        for (const AgentSpec* target : targets) {
            std::vector<Outcome> outcomes;
            outcomes.reserve(sim.transactions_per_round);
            for (unsigned i = 0; i < sim.transactions_per_round; ++i) {
                outcomes.push_back(rng.bernoulli(target->reliability) ? Outcome::successful
                                                                      : Outcome::unsuccessful);
            }
            for (const AgentSpec& agent : scenario.agents) {
                if (agent.id == target->id) {
                    continue;
                }
                for (const Outcome outcome : outcomes) {
                    ledger.record({agent.id, target->id, outcome, tick});
                }
            }
        }

        for (const QueryState& q : queries) {
            WeightTable& table = tables.at(q.pair.requester);
            const WitnessQuery witness_query{q.pair.requester, q.pair.target,
                                             scenario.query.depth_limit};
            std::vector<WitnessReport> reports =
                collect_reports(graph, witness_query, ledger, table);
            for (WitnessReport& report : reports) {
                const AgentSpec* witness_spec = scenario.find_agent(report.witness);
                report.rating = reported_rating(report.rating, witness_spec->behavior, rng);
            }

            RoundQueryResult entry;
            entry.round = round;
            entry.requester = q.pair.requester;
            entry.target = q.pair.target;
            entry.report = assemble_trust(records.at(q.pair.target), reports,
                                          scenario.query.weights, scenario.query.strategy);
            entry.observed_rate =
                reputation_score(ledger.aggregate(q.pair.requester, q.pair.target));
            entry.deviation_flagged = entry.report.deviation > sim.deviation_threshold;

            if (round % sim.update_every == 0) {
                for (const WitnessReport& report : reports) {
                    table.apply(report.witness,
                                theta(reputation_score(report.rating), entry.observed_rate));
                }
            }

            // Trajectory bookkeeping: witnesses discovered mid-run are
            // backfilled with the weight they implicitly held before.
            auto& trajectories = result.weight_trajectories[q.pair.requester];
            for (const WitnessReport& report : reports) {
                auto [it, inserted] = trajectories.try_emplace(report.witness);
                if (inserted && round > 1) {
                    it->second.assign(round - 1, report.weight_at_query);
                }
            }
            for (auto& [witness, trajectory] : trajectories) {
                trajectory.push_back(table.get(witness));
            }

            entry.reports = std::move(reports);
            result.rounds.push_back(std::move(entry));
        }
    }

    for (const auto& [requester, table] : tables) {
        result.final_weights[requester] = table.entries();
    }

    // Summary: trust error grouped by the target's behavior class, final
    // weights grouped by the witness's behavior class.
    std::map<std::string, std::pair<double, unsigned>> error_acc;
    for (const RoundQueryResult& entry : result.rounds) {
        const AgentSpec* target = scenario.find_agent(entry.target);
        auto& [sum, count] = error_acc[std::string(to_string(target->behavior.kind))];
        sum += std::abs(entry.report.trust - target->reliability);
        count += 1;
    }
    for (const auto& [behavior, acc] : error_acc) {
        result.summary.mean_abs_trust_error_by_behavior[behavior] =
            acc.first / static_cast<double>(acc.second);
    }

    std::map<std::string, std::pair<double, unsigned>> weight_acc;
    for (const auto& [requester, trajectories] : result.weight_trajectories) {
        const WeightTable& table = tables.at(requester);
        for (const auto& [witness, _] : trajectories) {
            const AgentSpec* spec = scenario.find_agent(witness);
            auto& [sum, count] = weight_acc[std::string(to_string(spec->behavior.kind))];
            sum += table.get(witness);
            count += 1;
        }
    }
    for (const auto& [behavior, acc] : weight_acc) {
        result.summary.mean_final_weight_by_behavior[behavior] =
            acc.first / static_cast<double>(acc.second);
    }

    for (const RoundQueryResult& entry : result.rounds) {
        if (entry.deviation_flagged) {
            result.summary.deviation_flag_count += 1;
        }
    }

    log_info("simulation finished: " + std::to_string(sim.rounds) + " rounds, " +
             std::to_string(queries.size()) + " queries per round, seed " +
             std::to_string(sim.seed));
    return result;
}

std::string SimResult::to_json() const {
    nlohmann::ordered_json root;
    root["rng_algorithm"] = rng_algorithm;
    root["config_echo"] = detail::scenario_to_json(config);

    root["rounds"] = nlohmann::ordered_json::array();
    for (const RoundQueryResult& entry : rounds) {
        root["rounds"].push_back(report_to_json(entry));
    }

    root["weight_trajectories"] = nlohmann::ordered_json::object();
    for (const auto& [requester, trajectories] : weight_trajectories) {
        nlohmann::ordered_json per_witness = nlohmann::ordered_json::object();
        for (const auto& [witness, trajectory] : trajectories) {
            per_witness[witness] = trajectory;
        }
        root["weight_trajectories"][requester] = std::move(per_witness);
    }

    root["final_weights"] = nlohmann::ordered_json::object();
    for (const auto& [requester, weights] : final_weights) {
        nlohmann::ordered_json per_witness = nlohmann::ordered_json::object();
        for (const auto& [witness, weight] : weights) {
            per_witness[witness] = weight;
        }
        root["final_weights"][requester] = std::move(per_witness);
    }

    nlohmann::ordered_json summary_json;
    summary_json["rounds"] = summary.rounds;
    summary_json["queries_per_round"] = summary.queries_per_round;
    summary_json["mean_abs_trust_error_by_behavior"] = nlohmann::ordered_json::object();
    for (const auto& [behavior, value] : summary.mean_abs_trust_error_by_behavior) {
        summary_json["mean_abs_trust_error_by_behavior"][behavior] = value;
    }
    summary_json["mean_final_weight_by_behavior"] = nlohmann::ordered_json::object();
    for (const auto& [behavior, value] : summary.mean_final_weight_by_behavior) {
        summary_json["mean_final_weight_by_behavior"][behavior] = value;
    }
    summary_json["deviation_flag_count"] = summary.deviation_flag_count;
    root["summary"] = std::move(summary_json);

    return root.dump(2) + "\n";
}

Scenario table_scenario() {
    Scenario scenario;

    const auto agent = [](AgentId id) {
        AgentSpec spec;
        spec.record.agent_id = id;
        spec.id = std::move(id);
        return spec;
    };

    scenario.agents.push_back(agent("buyer"));

    AgentSpec vendor = agent("vendor");
    vendor.record.total_reputation = 25;
    vendor.record.total_transactions = 45;
    vendor.record.community_guarantee = 1;
    scenario.agents.push_back(std::move(vendor));

    const std::vector<std::pair<AgentId, RatingVector>> witnesses = {
        {"w1", {2, 6}}, {"w2", {5, 5}}, {"w3", {6, 2}}, {"w4", {0, 8}}, {"w5", {8, 0}},
    };
    const std::vector<double> weights = {0.5, 0.75, 0.8, 0.01, 1.0};

    for (std::size_t i = 0; i < witnesses.size(); ++i) {
        scenario.agents.push_back(agent(witnesses[i].first));
        scenario.edges.emplace_back("buyer", witnesses[i].first);
        scenario.witness_weights[witnesses[i].first] = weights[i];

        std::uint64_t tick = 0;
        for (std::uint64_t s = 0; s < witnesses[i].second.successful; ++s) {
            scenario.seed_events.push_back(
                {witnesses[i].first, "vendor", Outcome::successful, tick++});
        }
        for (std::uint64_t u = 0; u < witnesses[i].second.unsuccessful; ++u) {
            scenario.seed_events.push_back(
                {witnesses[i].first, "vendor", Outcome::unsuccessful, tick++});
        }
    }

    scenario.query.requester = "buyer";
    scenario.query.target = "vendor";
    scenario.query.depth_limit = 1;
    scenario.query.weights = {0.5, 0.5};
    scenario.query.strategy = AgrStrategy::pooled;
    return scenario;
}

TrustReport replay_table_scenario() {
    const Scenario scenario = table_scenario();
    ensure_valid(scenario);
    const ReferralGraph graph = build_graph(scenario);
    const Ledger ledger = build_ledger(scenario);
    const WeightTable table = build_weight_table(scenario);
    const WitnessQuery query{scenario.query.requester, scenario.query.target,
                             scenario.query.depth_limit};
    return trust_query(graph, ledger, table, build_records(scenario), query,
                       scenario.query.weights, scenario.query.strategy);
}

void export_figures(const SimResult& result, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());
    }

    const auto open = [&out_dir](const char* name) {
        std::ofstream out(out_dir / name, std::ios::binary);
        if (!out) {
            throw IoError("cannot open " + (out_dir / name).string() + " for writing");
        }
        return out;
    };

    // fig2: per-witness view of the first query's final round.
    std::ofstream fig2 = open("fig2.csv");
    fig2 << "witness,successful,unsuccessful,reputation_score,theta,weighted_score\n";
    if (!result.rounds.empty()) {
        const AgentId& requester = result.rounds.front().requester;
        const AgentId& target = result.rounds.front().target;
        const RoundQueryResult* last = nullptr;
        for (const RoundQueryResult& entry : result.rounds) {
            if (entry.requester == requester && entry.target == target) {
                last = &entry;
            }
        }
        for (std::size_t i = 0; i < last->report.per_witness.size(); ++i) {
            const WitnessContribution& w = last->report.per_witness[i];
            const RatingVector& rating = last->reports[i].rating;
            fig2 << w.witness << ',' << rating.successful << ',' << rating.unsuccessful << ','
                 << format_double(w.raw_score) << ',' << format_double(w.theta) << ','
                 << format_double(w.weighted_score) << '\n';
        }
    }
    if (!fig2) {
        throw IoError("failed while writing fig2.csv under " + out_dir.string());
    }

    std::ofstream fig3 = open("fig3.csv");
    fig3 << "round,requester,target,own_component,witness_component,trust\n";
    for (const RoundQueryResult& entry : result.rounds) {
        fig3 << entry.round << ',' << entry.requester << ',' << entry.target << ','
             << format_double(entry.report.own_component) << ','
             << format_double(entry.report.witness_component) << ','
             << format_double(entry.report.trust) << '\n';
    }
    if (!fig3) {
        throw IoError("failed while writing fig3.csv under " + out_dir.string());
    }
}

}  // namespace trustnet
