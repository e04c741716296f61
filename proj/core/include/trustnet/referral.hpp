#pragma once

#include <map>
#include <set>
#include <vector>

#include "trustnet/ledger.hpp"
#include "trustnet/rating.hpp"
#include "trustnet/witness.hpp"

namespace trustnet {

/// Directed acquaintance graph. Edges are one-way (knowledge need not be
/// mutual); encode an undirected society with symmetric edges. No self-loops,
/// and every edge endpoint must be a declared agent.
class ReferralGraph {
  public:
    void add_agent(const AgentId& id);

    /// Throws std::invalid_argument on self-loops or undeclared endpoints.
    /// Duplicate edges are ignored.
    void add_edge(const AgentId& from, const AgentId& to);

    [[nodiscard]] bool has_agent(const AgentId& id) const;

    /// Outgoing neighbors, sorted by id.
    [[nodiscard]] const std::vector<AgentId>& neighbors(const AgentId& id) const;

    [[nodiscard]] std::vector<AgentId> agents() const;
    [[nodiscard]] std::size_t agent_count() const noexcept { return adjacency_.size(); }

  private:
    std::map<AgentId, std::vector<AgentId>> adjacency_;
};

struct WitnessQuery {
    AgentId requester;
    AgentId target;
    unsigned depth_limit = 0;
};

/// Witnesses reachable from the requester within depth_limit hops that hold
/// at least one rating about the target. Plain breadth-first traversal; the
/// hop bound is a hard cutoff. The requester and the target itself are never
/// witnesses. Result ordered by (hop distance, agent id).
/// Throws std::invalid_argument when the requester is not in the graph or
/// requester == target.
std::vector<AgentId> discover_witnesses(const ReferralGraph& graph, const WitnessQuery& query,
                                        const Ledger& ledger);

/// One report per discovered witness: its aggregate rating vector about the
/// target and its current weight (1.0 if the table has no entry). Order
/// matches discover_witnesses.
std::vector<WitnessReport> collect_reports(const ReferralGraph& graph, const WitnessQuery& query,
                                           const Ledger& ledger, const WeightTable& weights);

}  // namespace trustnet
