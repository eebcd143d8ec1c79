#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "ubinode/collection.hpp"
#include "ubinode/detection.hpp"
#include "ubinode/messages.hpp"
#include "ubinode/model.hpp"

namespace ubinode {

enum class AgentState : std::uint8_t { Unprovisioned, Provisioned, Active };

const char* to_string(AgentState state) noexcept;

struct AgentConfig {
    DetectionPolicy policy;
    int alarm_ttl = 1;
};

// What handle_message did, for the caller's log.
struct HandleResult {
    std::vector<Message> outbound;
    bool became_provisioned = false;
    bool duplicate_provision = false;
    bool alarm_recorded = false;
    bool alarm_duplicate = false;
    bool query_rejected = false;
    bool ack_received = false;
};

struct CommitOutcome {
    std::optional<Alarm> alarm;
    std::vector<Message> alarm_messages;
};

struct WindowOutcome {
    DetectionResult result;
    std::optional<Alarm> alarm;
    std::vector<Message> alarm_messages;
};

// Per-node state machine: Unprovisioned -> Provisioned -> Active, never
// backwards. Collection and detection run only on Active agents, and a
// node's verdicts depend on nothing but its own profile, events and policy.
class NodeAgent {
public:
    NodeAgent(NodeId id, std::vector<NodeId> neighbors, AgentConfig config);

    const NodeId& id() const noexcept { return id_; }
    AgentState state() const noexcept { return state_; }
    const std::vector<NodeId>& neighbors() const noexcept { return neighbors_; }
    const DetectionPolicy& policy() const noexcept { return config_.policy; }
    int alarm_ttl() const noexcept { return config_.alarm_ttl; }
    const std::vector<UnitKind>& units() const noexcept { return units_; }

    // Local membership view backing the existence test.
    void register_member(const NodeId& node) { known_members_.insert(node); }
    bool knows_member(const NodeId& node) const { return known_members_.count(node) > 0; }

    // Emits an ExistenceQuery to the next neighbor in ascending-id
    // round-robin order. Returns nullopt (caller logs a warning) when the
    // node is already provisioned. Throws StateError for an isolated node.
    std::optional<Message> request_join(Tick now);
    bool join_pending() const noexcept { return join_pending_; }
    Tick join_requested_at() const noexcept { return join_requested_at_; }

    HandleResult handle_message(const Message& msg, Tick now);

    // Direct provisioning, used for nodes active from scenario start. The
    // message path (ExistenceQuery/UnitProvision) lands in the same state.
    void install_units(std::vector<UnitKind> units);

    // Builds the profile from the grant and starts a fresh collector at
    // start_window (0 at scenario start, the current window for a mid-run
    // join). Requires Provisioned.
    void activate(const AuthGrant& grant, const CatalogPtr& catalog, WindowIndex start_window);

    ObserveOutcome observe(const EventRecord& event);
    WindowIndex collector_window() const noexcept;
    FeatureVector close_current_window();
    CommitOutcome commit_detection(DetectionResult result, Tick now);

    // close + detect + commit for the window just ended.
    WindowOutcome end_of_window(Tick now);

    const NodeProfile& profile() const;
    const Collector& collector() const;
    const std::vector<DetectionResult>& audit_trail() const noexcept { return audit_trail_; }
    const std::vector<Alarm>& alarm_log() const noexcept { return alarm_log_; }
    std::uint64_t unknown_action_count() const noexcept;

    // Alarm bookkeeping shared with raise_alarm/accept_alarm.
    std::uint64_t take_alarm_sequence() noexcept { return alarm_sequence_++; }
    bool record_alarm(const Alarm& alarm);

private:
    void require_active(const char* operation) const;

    NodeId id_;
    std::vector<NodeId> neighbors_;  // sorted
    AgentConfig config_;
    AgentState state_ = AgentState::Unprovisioned;
    std::vector<UnitKind> units_;
    std::optional<NodeProfile> profile_;
    std::optional<Collector> collector_;
    std::set<NodeId> known_members_;
    std::vector<DetectionResult> audit_trail_;
    std::vector<Alarm> alarm_log_;
    std::set<std::string> seen_alarm_ids_;
    std::uint64_t alarm_sequence_ = 0;
    std::size_t join_attempts_ = 0;
    bool join_pending_ = false;
    Tick join_requested_at_ = 0;
};

}  // namespace ubinode
