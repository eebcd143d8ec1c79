#include "ubinode/topology.hpp"

#include <algorithm>
#include <set>

namespace ubinode {

Topology Topology::build(std::vector<NodeId> nodes,
                         std::vector<std::pair<NodeId, NodeId>> edges) {
    Topology topo;
    std::set<NodeId> seen;
    for (auto& node : nodes) {
        if (node.empty()) {
            throw TopologyError("node id must be non-empty");
        }
        if (!seen.insert(node).second) {
            throw TopologyError("duplicate node id '" + node + "'");
        }
        topo.adjacency_.emplace(node, std::vector<NodeId>{});
    }
    for (const auto& [a, b] : edges) {
        if (a == b) {
            throw TopologyError("self-loop on node '" + a + "'");
        }
        for (const auto& endpoint : {a, b}) {
            if (seen.count(endpoint) == 0) {
                throw TopologyError("edge references unknown node '" + endpoint + "'");
            }
        }
        topo.adjacency_[a].push_back(b);
        topo.adjacency_[b].push_back(a);
    }
    for (auto& [node, adj] : topo.adjacency_) {
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
        topo.nodes_.push_back(node);
    }
    return topo;
}

const std::vector<NodeId>& Topology::neighbors(const NodeId& node) const {
    auto it = adjacency_.find(node);
    if (it == adjacency_.end()) {
        throw TopologyError("unknown node '" + node + "'");
    }
    return it->second;
}

bool Topology::adjacent(const NodeId& a, const NodeId& b) const {
    const auto& adj = neighbors(a);
    return std::binary_search(adj.begin(), adj.end(), b);
}

std::int32_t Topology::node_index(const NodeId& node) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), node);
    if (it == nodes_.end() || *it != node) {
        throw TopologyError("unknown node '" + node + "'");
    }
    return static_cast<std::int32_t>(it - nodes_.begin());
}

}  // namespace ubinode
