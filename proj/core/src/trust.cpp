#include "trustnet/trust.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trustnet {

double beta_pdf(double p, double alpha, double beta) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error("beta_pdf: p must lie in [0,1]");
    }
    if (!(alpha > 0.0) || !(beta > 0.0)) {
        throw std::domain_error("beta_pdf: alpha and beta must be positive");
    }
    if (p == 0.0 && alpha < 1.0) {
        throw std::domain_error("beta_pdf: p = 0 requires alpha >= 1");
    }
    if (p == 1.0 && beta < 1.0) {
        throw std::domain_error("beta_pdf: p = 1 requires beta >= 1");
    }

    // Log-gamma keeps the normalization finite for large counts.
    const double log_norm = std::lgamma(alpha + beta) - std::lgamma(alpha) - std::lgamma(beta);
    if (p == 0.0 || p == 1.0) {
        // pow handles the 0^0 = 1 case when an exponent is exactly zero.
        return std::exp(log_norm) * std::pow(p, alpha - 1.0) * std::pow(1.0 - p, beta - 1.0);
    }
    return std::exp(log_norm + (alpha - 1.0) * std::log(p) + (beta - 1.0) * std::log1p(-p));
}

double beta_expectation(double alpha, double beta) {
    if (!(alpha > 0.0) || !(beta > 0.0)) {
        throw std::domain_error("beta_expectation: alpha and beta must be positive");
    }
    return alpha / (alpha + beta);
}

double reputation_score(const RatingVector& v) {
    const double s = static_cast<double>(v.successful);
    const double u = static_cast<double>(v.unsuccessful);
    return (s + 1.0) / (s + u + 2.0);
}

void validate_record(const AgentRecord& record) {
    if (record.total_reputation > record.total_transactions) {
        throw std::invalid_argument("agent record '" + record.agent_id +
                                    "': total_reputation exceeds total_transactions");
    }
    if (record.community_guarantee != 0 && record.community_guarantee != 1) {
        throw std::invalid_argument("agent record '" + record.agent_id +
                                    "': community_guarantee must be 0 or 1");
    }
}

bool TrustWeights::valid(double tolerance) const {
    if (!(own >= 0.0 && own <= 1.0) || !(witness >= 0.0 && witness <= 1.0)) {
        return false;
    }
    return std::abs(own + witness - 1.0) <= tolerance;
}

double own_reputation_component(const AgentRecord& record) {
    if (record.total_transactions == 0) {
        return 0.0;
    }
    const double average = static_cast<double>(record.total_reputation) /
                           static_cast<double>(record.total_transactions);
    return static_cast<double>(record.community_guarantee) * average;
}

TrustReport compute_trust(const AgentRecord& record, double agr, const TrustWeights& weights) {
    validate_record(record);
    if (!weights.valid()) {
        throw std::invalid_argument("trust weights must each lie in [0,1] and sum to 1");
    }
    if (!(agr >= 0.0 && agr <= 1.0)) {
        throw std::domain_error("aggregate rating must lie in [0,1]");
    }

    TrustReport report;
    report.agr = agr;
    report.own_component = weights.own * own_reputation_component(record);
    report.witness_component = weights.witness * agr;
    // Clamp guards the last-ulp rounding at the scale boundary.
    report.trust = std::clamp(report.own_component + report.witness_component, 0.0, 1.0);

    const double raw_average =
        record.total_transactions == 0
            ? 0.0
            : static_cast<double>(record.total_reputation) /
                  static_cast<double>(record.total_transactions);
    report.deviation = deviation_check(raw_average, agr);
    return report;
}

double deviation_check(double own_avg, double agr) {
    if (!(own_avg >= 0.0 && own_avg <= 1.0) || !(agr >= 0.0 && agr <= 1.0)) {
        throw std::domain_error("deviation_check: inputs must lie in [0,1]");
    }
    return std::abs(own_avg - agr);
}

}  // namespace trustnet
