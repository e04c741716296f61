#include "trustnet/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "scenario_json.hpp"
#include "trustnet/errors.hpp"

namespace trustnet {

namespace {

using Json = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ScenarioError(path + ": " + message);
}

const Json& require_object(const Json& value, const std::string& path) {
    if (!value.is_object()) {
        fail(path, "expected an object");
    }
    return value;
}

void reject_unknown_keys(const Json& object, const std::string& path,
                         std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, _] : object.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            fail(path + "." + key, "unknown field");
        }
    }
}

std::string get_string(const Json& object, const std::string& path, const char* key) {
    if (!object.contains(key)) {
        fail(path + "." + key, "missing required field");
    }
    const Json& value = object.at(key);
    if (!value.is_string()) {
        fail(path + "." + key, "expected a string");
    }
    return value.get<std::string>();
}

double get_number(const Json& object, const std::string& path, const char* key,
                  double fallback) {
    if (!object.contains(key)) {
        return fallback;
    }
    const Json& value = object.at(key);
    if (!value.is_number()) {
        fail(path + "." + key, "expected a number");
    }
    return value.get<double>();
}

std::uint64_t get_count(const Json& object, const std::string& path, const char* key,
                        std::uint64_t fallback) {
    if (!object.contains(key)) {
        return fallback;
    }
    const Json& value = object.at(key);
    if (!value.is_number_integer() ||
        (!value.is_number_unsigned() && value.get<std::int64_t>() < 0)) {
        fail(path + "." + key, "expected a non-negative integer");
    }
    return value.get<std::uint64_t>();
}

Behavior parse_behavior(const std::string& text, const std::string& path) {
    if (text == "honest") {
        return Behavior::honest;
    }
    if (text == "liar") {
        return Behavior::liar;
    }
    if (text == "noisy") {
        return Behavior::noisy;
    }
    fail(path, "behavior must be one of honest|liar|noisy, got \"" + text + "\"");
}

AgrStrategy parse_strategy(const std::string& text, const std::string& path) {
    if (text == "pooled") {
        return AgrStrategy::pooled;
    }
    if (text == "mean_weighted" || text == "mean-weighted") {
        return AgrStrategy::mean_weighted;
    }
    fail(path, "strategy must be pooled or mean_weighted, got \"" + text + "\"");
}

AgentSpec parse_agent(const Json& value, const std::string& path) {
    require_object(value, path);
    reject_unknown_keys(value, path,
                        {"id", "reliability", "behavior", "noise_level", "community_guarantee",
                         "reputation", "transactions"});
    AgentSpec agent;
    agent.id = get_string(value, path, "id");
    agent.reliability = get_number(value, path, "reliability", 1.0);
    if (value.contains("behavior")) {
        agent.behavior.kind =
            parse_behavior(get_string(value, path, "behavior"), path + ".behavior");
    }
    agent.behavior.noise_level = get_number(value, path, "noise_level", 0.0);
    agent.record.agent_id = agent.id;
    agent.record.community_guarantee =
        static_cast<int>(get_count(value, path, "community_guarantee", 0));
    agent.record.total_reputation = get_count(value, path, "reputation", 0);
    agent.record.total_transactions = get_count(value, path, "transactions", 0);
    return agent;
}

RatingEvent parse_event(const Json& value, const std::string& path) {
    require_object(value, path);
    reject_unknown_keys(value, path, {"rater", "ratee", "outcome", "t"});
    RatingEvent event;
    event.rater = get_string(value, path, "rater");
    event.ratee = get_string(value, path, "ratee");
    const std::string outcome = get_string(value, path, "outcome");
    if (outcome == "S") {
        event.outcome = Outcome::successful;
    } else if (outcome == "U") {
        event.outcome = Outcome::unsuccessful;
    } else {
        fail(path + ".outcome", "must be \"S\" or \"U\", got \"" + outcome + "\"");
    }
    if (!value.contains("t")) {
        fail(path + ".t", "missing required field");
    }
    event.tick = get_count(value, path, "t", 0);
    return event;
}

QuerySpec parse_query(const Json& value, const std::string& path) {
    require_object(value, path);
    reject_unknown_keys(value, path, {"requester", "target", "depth_limit", "own_weight",
                                      "witness_weight", "strategy"});
    QuerySpec query;
    query.requester = get_string(value, path, "requester");
    query.target = get_string(value, path, "target");
    query.depth_limit = static_cast<unsigned>(get_count(value, path, "depth_limit", 1));
    query.weights.own = get_number(value, path, "own_weight", 0.5);
    query.weights.witness = get_number(value, path, "witness_weight", 0.5);
    if (value.contains("strategy")) {
        query.strategy = parse_strategy(get_string(value, path, "strategy"), path + ".strategy");
    }
    return query;
}

SimulationSpec parse_simulation(const Json& value, const std::string& path,
                                const QuerySpec& main_query) {
    require_object(value, path);
    reject_unknown_keys(value, path, {"rounds", "transactions_per_round", "seed", "update_every",
                                      "deviation_threshold", "queries"});
    SimulationSpec sim;
    sim.rounds = static_cast<unsigned>(get_count(value, path, "rounds", 1));
    sim.transactions_per_round =
        static_cast<unsigned>(get_count(value, path, "transactions_per_round", 1));
    sim.seed = get_count(value, path, "seed", 0);
    sim.update_every = static_cast<unsigned>(get_count(value, path, "update_every", 1));
    sim.deviation_threshold = get_number(value, path, "deviation_threshold", 0.25);
    if (value.contains("queries")) {
        const Json& queries = value.at("queries");
        if (!queries.is_array()) {
            fail(path + ".queries", "expected an array");
        }
        for (std::size_t i = 0; i < queries.size(); ++i) {
            const std::string entry_path = path + ".queries[" + std::to_string(i) + "]";
            require_object(queries[i], entry_path);
            reject_unknown_keys(queries[i], entry_path, {"requester", "target"});
            QueryPair pair;
            pair.requester = get_string(queries[i], entry_path, "requester");
            pair.target = get_string(queries[i], entry_path, "target");
            sim.queries.push_back(std::move(pair));
        }
    }
    if (sim.queries.empty()) {
        sim.queries.push_back({main_query.requester, main_query.target});
    }
    return sim;
}

}  // namespace

const AgentSpec* Scenario::find_agent(const AgentId& id) const {
    for (const AgentSpec& agent : agents) {
        if (agent.id == id) {
            return &agent;
        }
    }
    return nullptr;
}

std::string_view to_string(Behavior behavior) {
    switch (behavior) {
        case Behavior::honest: return "honest";
        case Behavior::liar: return "liar";
        case Behavior::noisy: return "noisy";
    }
    return "honest";
}

Scenario parse_scenario(const std::string& json_text) {
    Json root;
    try {
        root = Json::parse(json_text);
    } catch (const Json::parse_error& err) {
        throw ScenarioError(std::string("scenario: ") + err.what());
    }
    require_object(root, "scenario");
    reject_unknown_keys(root, "scenario",
                        {"agents", "edges", "events", "witness_weights", "query", "simulation"});

    Scenario scenario;

    if (!root.contains("agents")) {
        fail("scenario.agents", "missing required field");
    }
    const Json& agents = root.at("agents");
    if (!agents.is_array()) {
        fail("scenario.agents", "expected an array");
    }
    for (std::size_t i = 0; i < agents.size(); ++i) {
        scenario.agents.push_back(
            parse_agent(agents[i], "scenario.agents[" + std::to_string(i) + "]"));
    }

    if (root.contains("edges")) {
        const Json& edges = root.at("edges");
        if (!edges.is_array()) {
            fail("scenario.edges", "expected an array");
        }
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const std::string path = "scenario.edges[" + std::to_string(i) + "]";
            const Json& edge = edges[i];
            if (!edge.is_array() || edge.size() != 2 || !edge[0].is_string() ||
                !edge[1].is_string()) {
                fail(path, "expected a [from, to] pair of agent ids");
            }
            scenario.edges.emplace_back(edge[0].get<std::string>(), edge[1].get<std::string>());
        }
    }

    if (root.contains("events")) {
        const Json& events = root.at("events");
        if (!events.is_array()) {
            fail("scenario.events", "expected an array");
        }
        for (std::size_t i = 0; i < events.size(); ++i) {
            scenario.seed_events.push_back(
                parse_event(events[i], "scenario.events[" + std::to_string(i) + "]"));
        }
    }

    if (root.contains("witness_weights")) {
        const Json& weights = root.at("witness_weights");
        require_object(weights, "scenario.witness_weights");
        for (const auto& [witness, weight] : weights.items()) {
            if (!weight.is_number()) {
                fail("scenario.witness_weights." + witness, "expected a number");
            }
            scenario.witness_weights[witness] = weight.get<double>();
        }
    }

    if (!root.contains("query")) {
        fail("scenario.query", "missing required field");
    }
    scenario.query = parse_query(root.at("query"), "scenario.query");

    if (root.contains("simulation")) {
        scenario.simulation =
            parse_simulation(root.at("simulation"), "scenario.simulation", scenario.query);
    }

    return scenario;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open scenario file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw IoError("failed while reading scenario file: " + path.string());
    }
    return parse_scenario(buffer.str());
}

std::vector<std::string> validate(const Scenario& scenario) {
    std::vector<std::string> findings;
    const auto report = [&findings](const std::string& path, const std::string& message) {
        findings.push_back(path + ": " + message);
    };

    std::set<AgentId> ids;
    if (scenario.agents.empty()) {
        report("scenario.agents", "at least one agent is required");
    }
    for (std::size_t i = 0; i < scenario.agents.size(); ++i) {
        const AgentSpec& agent = scenario.agents[i];
        const std::string path = "scenario.agents[" + std::to_string(i) + "]";
        if (agent.id.empty()) {
            report(path + ".id", "must not be empty");
        }
        if (!ids.insert(agent.id).second) {
            report(path + ".id", "duplicate agent id '" + agent.id + "'");
        }
        if (!(agent.reliability >= 0.0 && agent.reliability <= 1.0)) {
            report(path + ".reliability", "must lie in [0,1]");
        }
        if (!(agent.behavior.noise_level >= 0.0 && agent.behavior.noise_level <= 1.0)) {
            report(path + ".noise_level", "must lie in [0,1]");
        }
        if (agent.record.community_guarantee != 0 && agent.record.community_guarantee != 1) {
            report(path + ".community_guarantee", "must be 0 or 1");
        }
        if (agent.record.total_reputation > agent.record.total_transactions) {
            report(path + ".reputation", "must not exceed transactions");
        }
    }
    const auto declared = [&ids](const AgentId& id) { return ids.contains(id); };

    for (std::size_t i = 0; i < scenario.edges.size(); ++i) {
        const auto& [from, to] = scenario.edges[i];
        const std::string path = "scenario.edges[" + std::to_string(i) + "]";
        if (!declared(from)) {
            report(path, "edge endpoint '" + from + "' is not a declared agent");
        }
        if (!declared(to)) {
            report(path, "edge endpoint '" + to + "' is not a declared agent");
        }
        if (from == to) {
            report(path, "self-loop on '" + from + "'");
        }
    }

    std::map<std::pair<AgentId, AgentId>, std::uint64_t> last_tick;
    for (std::size_t i = 0; i < scenario.seed_events.size(); ++i) {
        const RatingEvent& event = scenario.seed_events[i];
        const std::string path = "scenario.events[" + std::to_string(i) + "]";
        if (!declared(event.rater)) {
            report(path + ".rater", "'" + event.rater + "' is not a declared agent");
        }
        if (!declared(event.ratee)) {
            report(path + ".ratee", "'" + event.ratee + "' is not a declared agent");
        }
        if (event.rater == event.ratee) {
            report(path, "rater must not rate itself");
        }
        auto key = std::make_pair(event.rater, event.ratee);
        auto it = last_tick.find(key);
        if (it != last_tick.end() && event.tick < it->second) {
            report(path + ".t", "timestamp regresses for pair (" + event.rater + ", " +
                                    event.ratee + ")");
        } else {
            last_tick[std::move(key)] = event.tick;
        }
    }

    for (const auto& [witness, weight] : scenario.witness_weights) {
        const std::string path = "scenario.witness_weights." + witness;
        if (!declared(witness)) {
            report(path, "'" + witness + "' is not a declared agent");
        }
        if (!(weight > 0.0 && weight <= 1.0)) {
            report(path, "must lie in (0,1]");
        }
    }

    if (!declared(scenario.query.requester)) {
        report("scenario.query.requester",
               "'" + scenario.query.requester + "' is not a declared agent");
    }
    if (!declared(scenario.query.target)) {
        report("scenario.query.target", "'" + scenario.query.target + "' is not a declared agent");
    }
    if (scenario.query.requester == scenario.query.target) {
        report("scenario.query", "requester and target must differ");
    }
    if (!scenario.query.weights.valid()) {
        report("scenario.query.own_weight+witness_weight",
               "weights must each lie in [0,1] and sum to 1");
    }

    if (scenario.simulation) {
        const SimulationSpec& sim = *scenario.simulation;
        if (sim.rounds < 1) {
            report("scenario.simulation.rounds", "must be at least 1");
        }
        if (sim.transactions_per_round < 1) {
            report("scenario.simulation.transactions_per_round", "must be at least 1");
        }
        if (sim.update_every < 1) {
            report("scenario.simulation.update_every", "must be at least 1");
        }
        if (!(sim.deviation_threshold >= 0.0 && sim.deviation_threshold <= 1.0)) {
            report("scenario.simulation.deviation_threshold", "must lie in [0,1]");
        }
        for (std::size_t i = 0; i < sim.queries.size(); ++i) {
            const QueryPair& pair = sim.queries[i];
            const std::string path = "scenario.simulation.queries[" + std::to_string(i) + "]";
            if (!declared(pair.requester)) {
                report(path + ".requester", "'" + pair.requester + "' is not a declared agent");
            }
            if (!declared(pair.target)) {
                report(path + ".target", "'" + pair.target + "' is not a declared agent");
            }
            if (pair.requester == pair.target) {
                report(path, "requester and target must differ");
            }
        }
    }

    return findings;
}

void ensure_valid(const Scenario& scenario) {
    const std::vector<std::string> findings = validate(scenario);
    if (findings.empty()) {
        return;
    }
    std::string message = "scenario validation failed:";
    for (const std::string& finding : findings) {
        message += "\n  - " + finding;
    }
    throw ScenarioError(message);
}

ReferralGraph build_graph(const Scenario& scenario) {
    ReferralGraph graph;
    for (const AgentSpec& agent : scenario.agents) {
        graph.add_agent(agent.id);
    }
    for (const auto& [from, to] : scenario.edges) {
        graph.add_edge(from, to);
    }
    return graph;
}

Ledger build_ledger(const Scenario& scenario) {
    Ledger ledger;
    for (const RatingEvent& event : scenario.seed_events) {
        ledger.record(event);
    }
    return ledger;
}

std::map<AgentId, AgentRecord> build_records(const Scenario& scenario) {
    std::map<AgentId, AgentRecord> records;
    for (const AgentSpec& agent : scenario.agents) {
        records[agent.id] = agent.record;
    }
    return records;
}

WeightTable build_weight_table(const Scenario& scenario) {
    WeightTable table;
    for (const auto& [witness, weight] : scenario.witness_weights) {
        table.set(witness, weight);
    }
    return table;
}

namespace detail {

nlohmann::ordered_json scenario_to_json(const Scenario& scenario) {
    nlohmann::ordered_json root;

    root["agents"] = nlohmann::ordered_json::array();
    for (const AgentSpec& agent : scenario.agents) {
        nlohmann::ordered_json entry;
        entry["id"] = agent.id;
        entry["reliability"] = agent.reliability;
        entry["behavior"] = std::string(to_string(agent.behavior.kind));
        entry["noise_level"] = agent.behavior.noise_level;
        entry["community_guarantee"] = agent.record.community_guarantee;
        entry["reputation"] = agent.record.total_reputation;
        entry["transactions"] = agent.record.total_transactions;
        root["agents"].push_back(std::move(entry));
    }

    root["edges"] = nlohmann::ordered_json::array();
    for (const auto& [from, to] : scenario.edges) {
        root["edges"].push_back(nlohmann::ordered_json::array({from, to}));
    }

    root["events"] = nlohmann::ordered_json::array();
    for (const RatingEvent& event : scenario.seed_events) {
        nlohmann::ordered_json entry;
        entry["rater"] = event.rater;
        entry["ratee"] = event.ratee;
        entry["outcome"] = event.outcome == Outcome::successful ? "S" : "U";
        entry["t"] = event.tick;
        root["events"].push_back(std::move(entry));
    }

    root["witness_weights"] = nlohmann::ordered_json::object();
    for (const auto& [witness, weight] : scenario.witness_weights) {
        root["witness_weights"][witness] = weight;
    }

    nlohmann::ordered_json query;
    query["requester"] = scenario.query.requester;
    query["target"] = scenario.query.target;
    query["depth_limit"] = scenario.query.depth_limit;
    query["own_weight"] = scenario.query.weights.own;
    query["witness_weight"] = scenario.query.weights.witness;
    query["strategy"] = std::string(to_string(scenario.query.strategy));
    root["query"] = std::move(query);

    if (scenario.simulation) {
        const SimulationSpec& sim = *scenario.simulation;
        nlohmann::ordered_json entry;
        entry["rounds"] = sim.rounds;
        entry["transactions_per_round"] = sim.transactions_per_round;
        entry["seed"] = sim.seed;
        entry["update_every"] = sim.update_every;
        entry["deviation_threshold"] = sim.deviation_threshold;
        entry["queries"] = nlohmann::ordered_json::array();
        for (const QueryPair& pair : sim.queries) {
            nlohmann::ordered_json q;
            q["requester"] = pair.requester;
            q["target"] = pair.target;
            entry["queries"].push_back(std::move(q));
        }
        root["simulation"] = std::move(entry);
    }

    return root;
}

}  // namespace detail

std::string serialize_scenario(const Scenario& scenario) {
    return detail::scenario_to_json(scenario).dump(2);
}

}  // namespace trustnet
