#include "trustnet/referral.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace trustnet {

void ReferralGraph::add_agent(const AgentId& id) {
    adjacency_.try_emplace(id);
}

void ReferralGraph::add_edge(const AgentId& from, const AgentId& to) {
    if (from == to) {
        throw std::invalid_argument("referral graph: self-loop on '" + from + "'");
    }
    auto from_it = adjacency_.find(from);
    if (from_it == adjacency_.end() || !adjacency_.contains(to)) {
        throw std::invalid_argument("referral graph: edge (" + from + ", " + to +
                                    ") references an undeclared agent");
    }
    auto& out = from_it->second;
    auto pos = std::lower_bound(out.begin(), out.end(), to);
    if (pos == out.end() || *pos != to) {
        out.insert(pos, to);
    }
}

bool ReferralGraph::has_agent(const AgentId& id) const {
    return adjacency_.contains(id);
}

const std::vector<AgentId>& ReferralGraph::neighbors(const AgentId& id) const {
    static const std::vector<AgentId> kEmpty;
    auto it = adjacency_.find(id);
    return it == adjacency_.end() ? kEmpty : it->second;
}

std::vector<AgentId> ReferralGraph::agents() const {
    std::vector<AgentId> ids;
    ids.reserve(adjacency_.size());
    for (const auto& [id, _] : adjacency_) {
        ids.push_back(id);
    }
    return ids;
}

std::vector<AgentId> discover_witnesses(const ReferralGraph& graph, const WitnessQuery& query,
                                        const Ledger& ledger) {
    if (query.requester == query.target) {
        throw std::invalid_argument("witness query: requester and target must differ");
    }
    if (!graph.has_agent(query.requester)) {
        throw std::invalid_argument("witness query: unknown requester '" + query.requester + "'");
    }

    // Plain BFS; hop distances are graph distances, so chains may pass
    // through any agent including the target. Exclusions apply to the
    // result set only.
    std::map<AgentId, unsigned> distance;
    std::deque<AgentId> frontier;
    distance[query.requester] = 0;
    frontier.push_back(query.requester);
    while (!frontier.empty()) {
        const AgentId current = frontier.front();
        frontier.pop_front();
        const unsigned hops = distance[current];
        if (hops == query.depth_limit) {
            continue;
        }
        for (const AgentId& next : graph.neighbors(current)) {
            if (!distance.contains(next)) {
                distance[next] = hops + 1;
                frontier.push_back(next);
            }
        }
    }

    std::vector<std::pair<unsigned, AgentId>> found;
    for (const auto& [agent, hops] : distance) {
        if (agent == query.requester || agent == query.target) {
            continue;
        }
        if (ledger.has_history(agent, query.target)) {
            found.emplace_back(hops, agent);
        }
    }
    std::sort(found.begin(), found.end());

    std::vector<AgentId> witnesses;
    witnesses.reserve(found.size());
    for (auto& [_, agent] : found) {
        witnesses.push_back(std::move(agent));
    }
    return witnesses;
}

std::vector<WitnessReport> collect_reports(const ReferralGraph& graph, const WitnessQuery& query,
                                           const Ledger& ledger, const WeightTable& weights) {
    std::vector<WitnessReport> reports;
    for (AgentId& witness : discover_witnesses(graph, query, ledger)) {
        WitnessReport report;
        report.rating = ledger.aggregate(witness, query.target);
        report.weight_at_query = weights.get(witness);
        report.about = query.target;
        report.witness = std::move(witness);
        reports.push_back(std::move(report));
    }
    return reports;
}

}  // namespace trustnet
