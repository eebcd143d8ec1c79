#pragma once

#include <cstdint>
#include <string>

#include "ubinode/model.hpp"
#include "ubinode/types.hpp"

namespace ubinode {

// One observed action. The label is scenario ground truth used for run
// metrics; detection never sees it.
struct EventRecord {
    NodeId node;
    std::string feature;
    WindowIndex window = 0;
    Label label = Label::Benign;
};

enum class ObserveOutcome : std::uint8_t { Recorded, UnknownFeature };

// Per-node behavior aggregation. Bits only ever transition 0 -> 1 within a
// window; close_window snapshots the accumulator as V(t) and resets it.
class Collector {
public:
    Collector(NodeId node, CatalogPtr catalog, WindowIndex start_window = 0);

    // Sets the bit for the event's feature. Idempotent per window. Events
    // not in the catalog cannot set a bit; they bump the unknown-action
    // tally instead. Throws CollectError when the event targets another
    // node or a window other than the current one.
    ObserveOutcome observe(const EventRecord& event);

    // Returns V(t) for the current window and advances to window t+1.
    // Closing an event-free window yields the zero vector.
    FeatureVector close_window();

    const NodeId& node() const noexcept { return node_; }
    WindowIndex current_window() const noexcept { return current_window_; }
    std::uint64_t closed_windows() const noexcept { return closed_windows_; }
    std::uint64_t unknown_action_count() const noexcept { return unknown_actions_; }
    const FeatureVector& accumulator() const noexcept { return accumulator_; }

private:
    NodeId node_;
    CatalogPtr catalog_;
    WindowIndex current_window_;
    FeatureVector accumulator_;
    std::uint64_t closed_windows_ = 0;
    std::uint64_t unknown_actions_ = 0;
};

}  // namespace ubinode
