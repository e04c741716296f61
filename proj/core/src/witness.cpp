#include "trustnet/witness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "trustnet/trust.hpp"

namespace trustnet {

double theta(double prob_true, double observed_r, ThetaMode mode) {
    if (!(prob_true >= 0.0 && prob_true <= 1.0) || !(observed_r >= 0.0 && observed_r <= 1.0)) {
        throw std::domain_error("theta: both arguments must lie in [0,1]");
    }
    const double gap = mode == ThetaMode::absolute_difference ? std::abs(prob_true - observed_r)
                                                              : prob_true - observed_r;
    return std::clamp(1.0 - gap / 2.0, kWeightFloor, 1.0);
}

WitnessWeight update_weight(const WitnessWeight& current, double theta_value) {
    if (!(theta_value > 0.0 && theta_value <= 1.0)) {
        throw std::domain_error("update_weight: theta must lie in (0,1]");
    }
    if (!(current.weight > 0.0 && current.weight <= 1.0)) {
        throw std::domain_error("update_weight: current weight must lie in (0,1]");
    }
    return {current.witness, std::max(theta_value * current.weight, kWeightFloor)};
}

double weighted_score(double theta_value, const RatingVector& v) {
    return theta_value * reputation_score(v);
}

double WeightTable::get(const AgentId& witness) const {
    auto it = weights_.find(witness);
    return it == weights_.end() ? 1.0 : it->second;
}

void WeightTable::set(const AgentId& witness, double weight) {
    if (!(weight > 0.0 && weight <= 1.0)) {
        throw std::domain_error("witness weight for '" + witness + "' must lie in (0,1]");
    }
    weights_[witness] = weight;
}

void WeightTable::apply(const AgentId& witness, double theta_value) {
    weights_[witness] = update_weight({witness, get(witness)}, theta_value).weight;
}

}  // namespace trustnet
