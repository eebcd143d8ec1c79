#include "ubinode/agent.hpp"

#include <algorithm>
#include <utility>

#include "ubinode/alarm.hpp"

namespace ubinode {

const char* to_string(AgentState state) noexcept {
    switch (state) {
        case AgentState::Unprovisioned: return "unprovisioned";
        case AgentState::Provisioned: return "provisioned";
        case AgentState::Active: return "active";
    }
    return "unknown";
}

const char* to_string(MessageKind kind) noexcept {
    switch (kind) {
        case MessageKind::ExistenceQuery: return "existence_query";
        case MessageKind::ExistenceAck: return "existence_ack";
        case MessageKind::UnitProvision: return "unit_provision";
        case MessageKind::AlarmMsg: return "alarm";
    }
    return "unknown";
}

const char* to_string(UnitKind unit) noexcept {
    return unit == UnitKind::Collection ? "collection" : "detection";
}

NodeAgent::NodeAgent(NodeId id, std::vector<NodeId> neighbors, AgentConfig config)
    : id_(std::move(id)), neighbors_(std::move(neighbors)), config_(config) {
    std::sort(neighbors_.begin(), neighbors_.end());
    neighbors_.erase(std::unique(neighbors_.begin(), neighbors_.end()), neighbors_.end());
}

void NodeAgent::require_active(const char* operation) const {
    if (state_ != AgentState::Active) {
        throw StateError(std::string(operation) + " requires an Active agent; '" + id_ +
                         "' is " + to_string(state_));
    }
}

std::optional<Message> NodeAgent::request_join(Tick now) {
    if (neighbors_.empty()) {
        throw StateError("isolated node '" + id_ + "' has no neighbor to join through");
    }
    if (state_ != AgentState::Unprovisioned) {
        return std::nullopt;
    }
    const NodeId& target = neighbors_[join_attempts_ % neighbors_.size()];
    ++join_attempts_;
    join_pending_ = true;
    join_requested_at_ = now;
    return Message{MessageKind::ExistenceQuery, id_, target, now, std::nullopt, std::nullopt};
}

HandleResult NodeAgent::handle_message(const Message& msg, Tick now) {
    if (msg.to != id_) {
        throw ContractError("message addressed to '" + msg.to + "' handled by '" + id_ + "'");
    }
    if (!std::binary_search(neighbors_.begin(), neighbors_.end(), msg.from)) {
        throw TopologyError("message from non-neighbor '" + msg.from + "' at '" + id_ + "'");
    }

    HandleResult res;
    switch (msg.kind) {
        case MessageKind::ExistenceQuery: {
            // Existence test: provision only ids not already registered as
            // members in the local view, and only an Active node can hand
            // out the units.
            if (state_ != AgentState::Active || knows_member(msg.from)) {
                res.query_rejected = true;
                break;
            }
            register_member(msg.from);
            res.outbound.push_back(Message{MessageKind::ExistenceAck, id_, msg.from, now,
                                           std::nullopt, std::nullopt});
            res.outbound.push_back(
                Message{MessageKind::UnitProvision, id_, msg.from, now,
                        UnitProvisionBody{{UnitKind::Collection, UnitKind::Detection}},
                        std::nullopt});
            break;
        }
        case MessageKind::ExistenceAck:
            res.ack_received = true;
            break;
        case MessageKind::UnitProvision: {
            if (state_ != AgentState::Unprovisioned) {
                res.duplicate_provision = true;
                break;
            }
            units_ = msg.units ? msg.units->units
                               : std::vector<UnitKind>{UnitKind::Collection, UnitKind::Detection};
            state_ = AgentState::Provisioned;
            join_pending_ = false;
            res.became_provisioned = true;
            break;
        }
        case MessageKind::AlarmMsg: {
            auto accepted = accept_alarm(*this, msg, now);
            res.alarm_recorded = accepted.newly_logged;
            res.alarm_duplicate = !accepted.newly_logged;
            res.outbound = std::move(accepted.forwards);
            break;
        }
    }
    return res;
}

void NodeAgent::install_units(std::vector<UnitKind> units) {
    if (state_ != AgentState::Unprovisioned) {
        return;  // idempotent, matching the message path
    }
    units_ = std::move(units);
    state_ = AgentState::Provisioned;
}

void NodeAgent::activate(const AuthGrant& grant, const CatalogPtr& catalog,
                         WindowIndex start_window) {
    if (state_ == AgentState::Active) {
        throw StateError("node '" + id_ + "' is already Active");
    }
    if (state_ != AgentState::Provisioned) {
        throw StateError("node '" + id_ + "' cannot activate before provisioning");
    }
    profile_ = build_profile(grant, catalog);
    collector_.emplace(id_, catalog, start_window);
    state_ = AgentState::Active;
    register_member(id_);
}

ObserveOutcome NodeAgent::observe(const EventRecord& event) {
    require_active("observe");
    return collector_->observe(event);
}

WindowIndex NodeAgent::collector_window() const noexcept {
    return collector_ ? collector_->current_window() : -1;
}

FeatureVector NodeAgent::close_current_window() {
    require_active("close_current_window");
    return collector_->close_window();
}

CommitOutcome NodeAgent::commit_detection(DetectionResult result, Tick now) {
    require_active("commit_detection");
    audit_trail_.push_back(result);
    CommitOutcome outcome;
    if (result.verdict == Verdict::Anomaly) {
        auto [alarm, messages] = raise_alarm(*this, audit_trail_.back(), now);
        outcome.alarm = std::move(alarm);
        outcome.alarm_messages = std::move(messages);
    }
    return outcome;
}

WindowOutcome NodeAgent::end_of_window(Tick now) {
    require_active("end_of_window");
    const WindowIndex window = collector_->current_window();
    FeatureVector behavior = collector_->close_window();
    DetectionResult result = detect(*profile_, behavior, config_.policy, window);
    auto commit = commit_detection(result, now);
    return WindowOutcome{std::move(result), std::move(commit.alarm),
                         std::move(commit.alarm_messages)};
}

const NodeProfile& NodeAgent::profile() const {
    if (!profile_) {
        throw StateError("node '" + id_ + "' has no profile yet");
    }
    return *profile_;
}

const Collector& NodeAgent::collector() const {
    if (!collector_) {
        throw StateError("node '" + id_ + "' has no collector yet");
    }
    return *collector_;
}

std::uint64_t NodeAgent::unknown_action_count() const noexcept {
    return collector_ ? collector_->unknown_action_count() : 0;
}

bool NodeAgent::record_alarm(const Alarm& alarm) {
    if (!seen_alarm_ids_.insert(alarm.alarm_id).second) {
        return false;
    }
    alarm_log_.push_back(alarm);
    return true;
}

}  // namespace ubinode
