#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <string>

#include "support.hpp"
#include "trustnet/errors.hpp"
#include "trustnet/scenario.hpp"

using namespace trustnet;

namespace {

const char* kMinimalScenario = R"({
  "agents": [
    {"id": "a"},
    {"id": "b", "reliability": 0.8, "community_guarantee": 1,
     "reputation": 3, "transactions": 9},
    {"id": "w", "behavior": "noisy", "noise_level": 0.3}
  ],
  "edges": [["a", "w"]],
  "events": [
    {"rater": "w", "ratee": "b", "outcome": "S", "t": 0},
    {"rater": "w", "ratee": "b", "outcome": "U", "t": 1}
  ],
  "witness_weights": {"w": 0.75},
  "query": {"requester": "a", "target": "b", "depth_limit": 2,
            "own_weight": 0.4, "witness_weight": 0.6, "strategy": "mean_weighted"},
  "simulation": {"rounds": 5, "transactions_per_round": 3, "seed": 99}
})";

bool has_finding(const std::vector<std::string>& findings, const std::string& needle) {
    return std::any_of(findings.begin(), findings.end(), [&needle](const std::string& f) {
        return f.find(needle) != std::string::npos;
    });
}

}  // namespace

TEST_CASE("parsing a full scenario") {
    const Scenario scenario = parse_scenario(kMinimalScenario);
    CHECK(scenario.agents.size() == 3);
    CHECK(scenario.agents[0].reliability == 1.0);  // default
    CHECK(scenario.agents[1].record.total_transactions == 9);
    CHECK(scenario.agents[2].behavior.kind == Behavior::noisy);
    CHECK(scenario.agents[2].behavior.noise_level == 0.3);
    CHECK(scenario.edges.size() == 1);
    CHECK(scenario.seed_events.size() == 2);
    CHECK(scenario.witness_weights.at("w") == 0.75);
    CHECK(scenario.query.strategy == AgrStrategy::mean_weighted);
    CHECK(scenario.query.weights.own == 0.4);
    REQUIRE(scenario.simulation.has_value());
    CHECK(scenario.simulation->rounds == 5);
    CHECK(scenario.simulation->update_every == 1);              // default
    CHECK(scenario.simulation->deviation_threshold == 0.25);    // default
    REQUIRE(scenario.simulation->queries.size() == 1);          // defaults to main query
    CHECK(scenario.simulation->queries[0].requester == "a");
    CHECK(scenario.simulation->queries[0].target == "b");

    CHECK(validate(scenario).empty());
}

TEST_CASE("serialize/parse round-trip") {
    const Scenario scenario = parse_scenario(kMinimalScenario);
    const Scenario again = parse_scenario(serialize_scenario(scenario));
    CHECK(serialize_scenario(again) == serialize_scenario(scenario));
}

TEST_CASE("parse errors name the offending field") {
    CHECK_THROWS_WITH_AS(parse_scenario("not json at all"), doctest::Contains("scenario:"),
                         ScenarioError);
    CHECK_THROWS_WITH_AS(parse_scenario(R"({"query": {}})"),
                         doctest::Contains("scenario.agents"), ScenarioError);
    CHECK_THROWS_WITH_AS(parse_scenario(R"({"agents": 5, "query": {}})"),
                         doctest::Contains("scenario.agents"), ScenarioError);
    CHECK_THROWS_WITH_AS(parse_scenario(R"({"agents": [{"id": "a", "typo_field": 1}],
                                             "query": {"requester": "a", "target": "b"}})"),
                         doctest::Contains("agents[0].typo_field"), ScenarioError);
    CHECK_THROWS_WITH_AS(parse_scenario(R"({"agents": [{"id": "a"}]})"),
                         doctest::Contains("scenario.query"), ScenarioError);
    CHECK_THROWS_WITH_AS(
        parse_scenario(R"({"agents": [{"id": "a", "behavior": "sneaky"}],
                           "query": {"requester": "a", "target": "b"}})"),
        doctest::Contains("behavior"), ScenarioError);
    CHECK_THROWS_WITH_AS(
        parse_scenario(R"({"agents": [{"id": "a"}],
                           "query": {"requester": "a", "target": "b", "strategy": "median"}})"),
        doctest::Contains("strategy"), ScenarioError);
    CHECK_THROWS_WITH_AS(
        parse_scenario(R"({"agents": [{"id": "a"}], "events": [{"rater": "a"}],
                           "query": {"requester": "a", "target": "b"}})"),
        doctest::Contains("events[0]"), ScenarioError);
    CHECK_THROWS_WITH_AS(
        parse_scenario(R"({"agents": [{"id": "a", "transactions": -3}],
                           "query": {"requester": "a", "target": "b"}})"),
        doctest::Contains("transactions"), ScenarioError);
}

TEST_CASE("validation findings") {
    Scenario scenario = parse_scenario(kMinimalScenario);

    SUBCASE("weights must sum to one") {
        scenario.query.weights = {0.6, 0.6};
        CHECK(has_finding(validate(scenario), "own_weight+witness_weight"));
        CHECK_THROWS_AS(ensure_valid(scenario), ScenarioError);
    }
    SUBCASE("edges must reference declared agents") {
        scenario.edges.emplace_back("a", "ghost");
        CHECK(has_finding(validate(scenario), "scenario.edges[1]"));
    }
    SUBCASE("self-loops are rejected") {
        scenario.edges.emplace_back("a", "a");
        CHECK(has_finding(validate(scenario), "self-loop"));
    }
    SUBCASE("duplicate agent ids") {
        scenario.agents.push_back(scenario.agents[0]);
        CHECK(has_finding(validate(scenario), "duplicate agent id"));
    }
    SUBCASE("reliability range") {
        scenario.agents[0].reliability = 1.5;
        CHECK(has_finding(validate(scenario), "reliability"));
    }
    SUBCASE("guarantee flag is binary") {
        scenario.agents[0].record.community_guarantee = 2;
        CHECK(has_finding(validate(scenario), "community_guarantee"));
    }
    SUBCASE("reputation cannot exceed transactions") {
        scenario.agents[0].record.total_reputation = 5;
        scenario.agents[0].record.total_transactions = 2;
        CHECK(has_finding(validate(scenario), "reputation"));
    }
    SUBCASE("self-rating seed events") {
        scenario.seed_events.push_back({"w", "w", Outcome::successful, 5});
        CHECK(has_finding(validate(scenario), "rater must not rate itself"));
    }
    SUBCASE("seed event timestamps must not regress per pair") {
        scenario.seed_events.push_back({"w", "b", Outcome::successful, 0});
        CHECK(has_finding(validate(scenario), "timestamp regresses"));
    }
    SUBCASE("witness weights in range and declared") {
        scenario.witness_weights["w"] = 0.0;
        CHECK(has_finding(validate(scenario), "witness_weights.w"));
        scenario.witness_weights["ghost"] = 0.5;
        CHECK(has_finding(validate(scenario), "witness_weights.ghost"));
    }
    SUBCASE("query participants must exist and differ") {
        scenario.query.target = "a";
        CHECK(has_finding(validate(scenario), "requester and target must differ"));
        scenario.query.target = "ghost";
        CHECK(has_finding(validate(scenario), "query.target"));
    }
    SUBCASE("simulation ranges") {
        scenario.simulation->rounds = 0;
        scenario.simulation->deviation_threshold = 2.0;
        const auto findings = validate(scenario);
        CHECK(has_finding(findings, "simulation.rounds"));
        CHECK(has_finding(findings, "deviation_threshold"));
    }
    SUBCASE("simulation query pairs are checked") {
        scenario.simulation->queries.push_back({"a", "ghost"});
        CHECK(has_finding(validate(scenario), "simulation.queries[1].target"));
    }
}

TEST_CASE("builders materialize the declared society") {
    const Scenario scenario = parse_scenario(kMinimalScenario);
    const ReferralGraph graph = build_graph(scenario);
    CHECK(graph.agent_count() == 3);
    CHECK(graph.neighbors("a") == std::vector<AgentId>{"w"});

    const Ledger ledger = build_ledger(scenario);
    CHECK(ledger.aggregate("w", "b") == RatingVector{1, 1});

    const auto records = build_records(scenario);
    CHECK(records.at("b").total_reputation == 3);

    const WeightTable table = build_weight_table(scenario);
    CHECK(table.get("w") == 0.75);
    CHECK(table.get("a") == 1.0);
}

TEST_CASE("load_scenario distinguishes missing files from bad content") {
    CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), IoError);
}
