#pragma once

#include <map>

#include "trustnet/rating.hpp"

namespace trustnet {

/// Weights never fall below this floor: the update rule requires strictly
/// positive credibility, and the smallest weight the worked data uses is 0.01.
inline constexpr double kWeightFloor = 0.01;

/// How the credibility multiplier treats the gap between a witness's claim
/// and the observed rate. The printed update rule 1 - (prob - R)/2 exceeds 1
/// whenever prob < R, contradicting its own bound 0 < theta <= 1, so the
/// absolute-difference form is the default; the signed form is kept
/// selectable for comparison.
enum class ThetaMode { absolute_difference, signed_difference };

/// Credibility multiplier in (0,1]: 1 - |prob_true - observed_r| / 2 clamped
/// to [kWeightFloor, 1]. Both arguments must lie in [0,1]; throws
/// std::domain_error otherwise.
double theta(double prob_true, double observed_r,
             ThetaMode mode = ThetaMode::absolute_difference);

/// One witness's credibility weight, multiplied down after each observed
/// disagreement and never raised.
struct WitnessWeight {
    AgentId witness;
    double weight = 1.0;
};

/// weight' = max(theta_value * weight, kWeightFloor). Throws
/// std::domain_error when either operand lies outside (0,1].
WitnessWeight update_weight(const WitnessWeight& current, double theta_value);

/// theta_value * (S+1)/(S+U+2), the credibility-discounted point estimate.
/// Callers must pass theta_value in (0,1].
double weighted_score(double theta_value, const RatingVector& v);

/// A witness's answer to a referral: its rating vector about the target and
/// the weight it carried when the referral was answered.
struct WitnessReport {
    AgentId witness;
    AgentId about;
    RatingVector rating;
    double weight_at_query = 1.0;
};

/// Per-requester credibility table. Unknown witnesses start at 1.0.
/// Single writer, concurrent readers.
class WeightTable {
  public:
    [[nodiscard]] double get(const AgentId& witness) const;

    /// Seeds or overwrites an entry; the weight must lie in (0,1].
    void set(const AgentId& witness, double weight);

    /// Applies one multiplicative update: weight <- max(theta * weight, floor).
    void apply(const AgentId& witness, double theta_value);

    [[nodiscard]] const std::map<AgentId, double>& entries() const noexcept { return weights_; }

  private:
    std::map<AgentId, double> weights_;
};

}  // namespace trustnet
