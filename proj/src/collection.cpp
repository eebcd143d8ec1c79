#include "ubinode/collection.hpp"

#include <utility>

namespace ubinode {

Collector::Collector(NodeId node, CatalogPtr catalog, WindowIndex start_window)
    : node_(std::move(node)),
      catalog_(catalog),
      current_window_(start_window),
      accumulator_(FeatureVector::zeros(std::move(catalog))) {}

ObserveOutcome Collector::observe(const EventRecord& event) {
    if (event.node != node_) {
        throw CollectError(CollectError::Kind::NodeMismatch,
                           "event for node '" + event.node + "' delivered to collector of '" +
                               node_ + "'");
    }
    if (event.window < current_window_) {
        throw CollectError(CollectError::Kind::LateEvent,
                           "late event for closed window " + std::to_string(event.window) +
                               " (collector at window " + std::to_string(current_window_) + ")");
    }
    if (event.window > current_window_) {
        throw CollectError(CollectError::Kind::FutureEvent,
                           "event for future window " + std::to_string(event.window) +
                               " (collector at window " + std::to_string(current_window_) + ")");
    }
    const auto index = catalog_->index_of(event.feature);
    if (!index) {
        ++unknown_actions_;
        return ObserveOutcome::UnknownFeature;
    }
    accumulator_.set(*index, true);
    return ObserveOutcome::Recorded;
}

FeatureVector Collector::close_window() {
    FeatureVector snapshot = accumulator_;
    accumulator_ = FeatureVector::zeros(catalog_);
    ++current_window_;
    ++closed_windows_;
    return snapshot;
}

}  // namespace ubinode
