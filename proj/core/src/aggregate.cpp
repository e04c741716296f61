#include "trustnet/aggregate.hpp"

#include <stdexcept>
#include <vector>

namespace trustnet {

std::string_view to_string(AgrStrategy strategy) {
    return strategy == AgrStrategy::pooled ? "pooled" : "mean_weighted";
}

double agr_pooled(std::span<const WitnessReport> reports) {
    if (reports.empty()) {
        return 0.0;
    }
    RatingVector pooled;
    double theta_sum = 0.0;
    for (const WitnessReport& report : reports) {
        pooled += report.rating;
        theta_sum += report.weight_at_query;
    }
    const double mean_theta = theta_sum / static_cast<double>(reports.size());
    return mean_theta * reputation_score(pooled);
}

double agr_mean_weighted(std::span<const WitnessReport> reports) {
    if (reports.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (const WitnessReport& report : reports) {
        sum += weighted_score(report.weight_at_query, report.rating);
    }
    return sum / static_cast<double>(reports.size());
}

double aggregate_rating(std::span<const WitnessReport> reports, AgrStrategy strategy) {
    return strategy == AgrStrategy::pooled ? agr_pooled(reports) : agr_mean_weighted(reports);
}

TrustReport assemble_trust(const AgentRecord& target_record,
                           std::span<const WitnessReport> reports, const TrustWeights& weights,
                           AgrStrategy strategy) {
    TrustReport report = compute_trust(target_record, aggregate_rating(reports, strategy), weights);
    report.per_witness.reserve(reports.size());
    for (const WitnessReport& witness_report : reports) {
        WitnessContribution contribution;
        contribution.witness = witness_report.witness;
        contribution.raw_score = reputation_score(witness_report.rating);
        contribution.theta = witness_report.weight_at_query;
        contribution.weighted_score =
            weighted_score(witness_report.weight_at_query, witness_report.rating);
        report.per_witness.push_back(std::move(contribution));
    }
    return report;
}

TrustReport trust_query(const ReferralGraph& graph, const Ledger& ledger,
                        const WeightTable& weights, const std::map<AgentId, AgentRecord>& records,
                        const WitnessQuery& query, const TrustWeights& trust_weights,
                        AgrStrategy strategy) {
    auto record_it = records.find(query.target);
    if (record_it == records.end()) {
        throw std::invalid_argument("trust query: unknown target '" + query.target + "'");
    }
    const std::vector<WitnessReport> reports = collect_reports(graph, query, ledger, weights);
    return assemble_trust(record_it->second, reports, trust_weights, strategy);
}

}  // namespace trustnet
