#pragma once

#include <map>
#include <utility>
#include <vector>

#include "ubinode/errors.hpp"
#include "ubinode/types.hpp"

namespace ubinode {

// Undirected graph of one-hop adjacency. Node and neighbor iteration is
// sorted by id so every traversal is deterministic.
class Topology {
public:
    static Topology build(std::vector<NodeId> nodes,
                          std::vector<std::pair<NodeId, NodeId>> edges);

    const std::vector<NodeId>& nodes() const noexcept { return nodes_; }
    bool has_node(const NodeId& node) const { return adjacency_.count(node) > 0; }
    const std::vector<NodeId>& neighbors(const NodeId& node) const;
    bool adjacent(const NodeId& a, const NodeId& b) const;

    // Index into the sorted node list; used to intern node ids in logs.
    std::int32_t node_index(const NodeId& node) const;

private:
    std::vector<NodeId> nodes_;  // sorted
    std::map<NodeId, std::vector<NodeId>> adjacency_;
};

}  // namespace ubinode
