#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "trustnet/aggregate.hpp"
#include "trustnet/ledger.hpp"
#include "trustnet/referral.hpp"
#include "trustnet/rng.hpp"
#include "trustnet/simulation.hpp"
#include "trustnet/trust.hpp"

namespace {

using namespace trustnet;

void BM_BetaPdf(benchmark::State& state) {
    double p = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(beta_pdf(p, 3.5, 7.25));
        p += 1e-7;
    }
}
BENCHMARK(BM_BetaPdf);

void BM_ReputationScore(benchmark::State& state) {
    RatingVector v{123456, 7890};
    for (auto _ : state) {
        benchmark::DoNotOptimize(reputation_score(v));
        v.successful += 1;
    }
}
BENCHMARK(BM_ReputationScore);

Ledger bench_ledger(std::size_t events) {
    SplitMix64 rng(99);
    const std::vector<AgentId> pool = {"a", "b", "c", "d", "e", "f", "g", "h"};
    Ledger ledger;
    for (std::size_t i = 0; i < events; ++i) {
        const AgentId& rater = pool[rng.next_below(pool.size())];
        AgentId ratee = rater;
        while (ratee == rater) {
            ratee = pool[rng.next_below(pool.size())];
        }
        ledger.record({rater, ratee,
                       rng.bernoulli(0.7) ? Outcome::successful : Outcome::unsuccessful, i});
    }
    return ledger;
}

void BM_LedgerAggregate(benchmark::State& state) {
    const Ledger ledger = bench_ledger(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ledger.aggregate("a", "b"));
    }
}
BENCHMARK(BM_LedgerAggregate)->Arg(1000)->Arg(100000);

void BM_LedgerPrefixAggregate(benchmark::State& state) {
    const Ledger ledger = bench_ledger(static_cast<std::size_t>(state.range(0)));
    const std::uint64_t cutoff = static_cast<std::uint64_t>(state.range(0)) / 2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ledger.aggregate("a", "b", cutoff));
    }
}
BENCHMARK(BM_LedgerPrefixAggregate)->Arg(1000)->Arg(100000);

void BM_DiscoverWitnesses(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    SplitMix64 rng(7);
    ReferralGraph graph;
    std::vector<AgentId> ids;
    for (std::size_t i = 0; i < n; ++i) {
        ids.push_back("agent" + std::to_string(i));
        graph.add_agent(ids.back());
    }
    Ledger ledger;
    for (std::size_t i = 0; i < n; ++i) {
        for (int e = 0; e < 4; ++e) {
            const AgentId& to = ids[rng.next_below(n)];
            if (to != ids[i]) {
                graph.add_edge(ids[i], to);
            }
        }
        if (i != 0 && rng.bernoulli(0.5)) {
            ledger.record({ids[i], ids[0], Outcome::successful, 0});
        }
    }
    const WitnessQuery query{ids[n - 1], ids[0], 3};
    for (auto _ : state) {
        benchmark::DoNotOptimize(discover_witnesses(graph, query, ledger));
    }
}
BENCHMARK(BM_DiscoverWitnesses)->Arg(100)->Arg(1000);

void BM_TrustQueryWorkedExample(benchmark::State& state) {
    const Scenario scenario = table_scenario();
    const ReferralGraph graph = build_graph(scenario);
    const Ledger ledger = build_ledger(scenario);
    const WeightTable table = build_weight_table(scenario);
    const auto records = build_records(scenario);
    const WitnessQuery query{"buyer", "vendor", 1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(trust_query(graph, ledger, table, records, query, {0.5, 0.5},
                                             AgrStrategy::pooled));
    }
}
BENCHMARK(BM_TrustQueryWorkedExample);

void BM_SimulationRound(benchmark::State& state) {
    Scenario scenario = table_scenario();
    SimulationSpec sim;
    sim.rounds = static_cast<unsigned>(state.range(0));
    sim.transactions_per_round = 10;
    sim.seed = 123;
    scenario.simulation = sim;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_scenario(scenario));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulationRound)->Arg(10)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
