#pragma once

#include <map>
#include <span>
#include <string_view>

#include "trustnet/ledger.hpp"
#include "trustnet/referral.hpp"
#include "trustnet/trust.hpp"
#include "trustnet/witness.hpp"

namespace trustnet {

/// Two readings of "an average of the scores weighted by theta", both kept
/// first-class because the source sentence is ambiguous:
///
///   pooled:        mean(theta_i) * score(sum of all rating vectors).
///                   Reproduces the worked headline figure (0.43) and is the
///                   default.
///   mean_weighted: (1/n) * sum(theta_i * score(v_i)), the literal
///                   word-by-word reading; gives 0.476 on the same data.
enum class AgrStrategy { pooled, mean_weighted };

std::string_view to_string(AgrStrategy strategy);

/// mean(theta) * reputation_score(pooled vector). Empty input yields 0:
/// granting the 0.5 prior to an agent nobody vouches for would hand
/// unvouched agents half the witness component for free.
double agr_pooled(std::span<const WitnessReport> reports);

/// Mean of the per-witness weighted scores. Empty input yields 0.
double agr_mean_weighted(std::span<const WitnessReport> reports);

double aggregate_rating(std::span<const WitnessReport> reports, AgrStrategy strategy);

/// Combines a target's record with already-collected reports: computes AGR
/// under the chosen strategy, runs compute_trust, and fills the per-witness
/// breakdown (raw score, theta, weighted score per report).
TrustReport assemble_trust(const AgentRecord& target_record,
                           std::span<const WitnessReport> reports, const TrustWeights& weights,
                           AgrStrategy strategy);

/// End-to-end trust query: discover witnesses, collect their reports, and
/// assemble the trust report. Throws std::invalid_argument when the target
/// has no record or the requester is unknown to the graph.
TrustReport trust_query(const ReferralGraph& graph, const Ledger& ledger,
                        const WeightTable& weights, const std::map<AgentId, AgentRecord>& records,
                        const WitnessQuery& query, const TrustWeights& trust_weights,
                        AgrStrategy strategy);

}  // namespace trustnet
