#pragma once

#include <cstdint>
#include <vector>

#include "trustnet/rating.hpp"

namespace trustnet {

/// Beta density f(p | alpha, beta). Requires p in [0,1], alpha > 0, beta > 0,
/// and additionally p != 0 when alpha < 1 and p != 1 when beta < 1 (the
/// density is singular there). Throws std::domain_error otherwise.
double beta_pdf(double p, double alpha, double beta);

/// Expectation alpha / (alpha + beta) of the beta distribution.
/// Throws std::domain_error on non-positive parameters.
double beta_expectation(double alpha, double beta);

/// Point estimate (S+1)/(S+U+2) of the probability that the rated agent
/// behaves well, given S successful and U unsuccessful outcomes. Equals
/// beta_expectation(S+1, U+1).
double reputation_score(const RatingVector& v);

/// An agent's self-reported standing: total count of positively rated
/// transactions, total transaction count, and whether an established
/// community vouches for it (exactly 0 or 1).
struct AgentRecord {
    AgentId agent_id;
    std::uint64_t total_reputation = 0;
    std::uint64_t total_transactions = 0;
    int community_guarantee = 0;
};

/// Throws std::invalid_argument if the record violates its invariants
/// (reputation above transaction count, guarantee flag outside {0,1}).
void validate_record(const AgentRecord& record);

/// Weights for the two trust components. Must each lie in [0,1] and sum
/// to 1 within 1e-9.
struct TrustWeights {
    double own = 0.5;
    double witness = 0.5;

    [[nodiscard]] bool valid(double tolerance = 1e-9) const;
};

/// One witness's contribution to a trust report.
struct WitnessContribution {
    AgentId witness;
    double raw_score = 0.0;
    double theta = 0.0;
    double weighted_score = 0.0;
};

struct TrustReport {
    double trust = 0.0;
    double own_component = 0.0;
    double witness_component = 0.0;
    double agr = 0.0;
    std::vector<WitnessContribution> per_witness;
    double deviation = 0.0;
};

/// Self-reported component: community_guarantee * total_reputation /
/// total_transactions. A record with zero transactions contributes 0;
/// a newcomer's self-report carries no evidence.
double own_reputation_component(const AgentRecord& record);

/// Composite trust: weights.own * own_reputation_component(record) +
/// weights.witness * agr. The report's deviation field holds
/// |raw self-reported average - agr|, ignoring the guarantee flag, so the
/// diagnostic measures self-report vs. society even for unvouched agents.
/// Throws std::invalid_argument on invalid weights or record and
/// std::domain_error when agr lies outside [0,1].
TrustReport compute_trust(const AgentRecord& record, double agr, const TrustWeights& weights);

/// |own_avg - agr|. Callers compare the result against a configurable
/// threshold (0.25 by default at the scenario level).
double deviation_check(double own_avg, double agr);

}  // namespace trustnet
