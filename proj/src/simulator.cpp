#include "ubinode/simulator.hpp"

#include <algorithm>
#include <queue>
#include <utility>

namespace ubinode {

void SimConfig::validate() const {
    if (window_length < 1) {
        throw ConfigError("window_length must be >= 1");
    }
    if (total_windows < 1) {
        throw ConfigError("total_windows must be >= 1");
    }
    if (delay < 0) {
        throw ConfigError("delay must be >= 0");
    }
    if (join_retry_timeout < 1) {
        throw ConfigError("join_retry_timeout must be >= 1");
    }
    if (alarm_ttl < 1) {
        throw ConfigError("alarm_ttl must be >= 1");
    }
    if (!delivery.lossless &&
        !(delivery.loss_probability >= 0.0 && delivery.loss_probability <= 1.0)) {
        throw ConfigError("loss_probability must be in [0, 1]");
    }
    if (rng_algorithm != SplitMix64::kAlgorithmName) {
        throw ConfigError("unsupported rng algorithm '" + rng_algorithm + "' (supported: " +
                          std::string(SplitMix64::kAlgorithmName) + ")");
    }
}

std::vector<EventRecord> inject_intruder(std::vector<EventRecord> trace,
                                         const IntruderSpec& spec, const CatalogPtr& catalog,
                                         const Topology& topology, WindowIndex total_windows) {
    if (!topology.has_node(spec.target_node)) {
        throw ScenarioError(ScenarioError::Category::UnresolvedReference,
                            "intruder targets unknown node '" + spec.target_node + "'");
    }
    if (spec.window < 0 || spec.window >= total_windows) {
        throw ScenarioError(ScenarioError::Category::InvariantViolation,
                            "intruder window " + std::to_string(spec.window) +
                                " outside run of " + std::to_string(total_windows) + " windows");
    }
    for (const auto& feature : spec.features) {
        if (!catalog->index_of(feature)) {
            throw ScenarioError(ScenarioError::Category::UnresolvedReference,
                                "intruder uses unknown feature '" + feature + "'");
        }
    }
    for (const auto& feature : spec.features) {
        trace.push_back(EventRecord{spec.target_node, feature, spec.window, Label::Malicious});
    }
    return trace;
}

namespace {

struct Scheduled {
    Tick deliver_at = 0;
    std::uint64_t seq = 0;
    Message msg;
};

struct ScheduledAfter {
    bool operator()(const Scheduled& a, const Scheduled& b) const {
        if (a.deliver_at != b.deliver_at) {
            return a.deliver_at > b.deliver_at;
        }
        return a.seq > b.seq;
    }
};

class Engine {
public:
    Engine(const SimInput& input, SweepEngine sweep_engine)
        : input_(input),
          sweep_engine_(sweep_engine),
          log_(input.topology.nodes(), input.catalog),
          rng_(input.config.seed) {}

    SimOutput run();

private:
    void validate();
    void build_agents();
    void group_trace();
    void send(Message msg);
    void deliver_until(Tick t);
    void process_joins(Tick t);
    void ingest_window(WindowIndex w, Tick t);
    void close_window(WindowIndex w, Tick t);

    std::int32_t idx(const NodeId& node) const { return log_.node_index(node); }
    std::int32_t feature_idx(const std::string& name) const {
        auto i = input_.catalog->index_of(name);
        return i ? static_cast<std::int32_t>(*i) : -1;
    }

    static std::vector<std::int32_t> narrow(const std::vector<std::size_t>& v) {
        std::vector<std::int32_t> out;
        out.reserve(v.size());
        for (auto x : v) {
            out.push_back(static_cast<std::int32_t>(x));
        }
        return out;
    }

    void log_warning(Tick t, std::int32_t node, std::string text) {
        LogEntry e;
        e.tick = t;
        e.type = LogType::Warning;
        e.node = node;
        e.detail = std::make_unique<LogDetail>();
        e.detail->text = std::move(text);
        log_.append(std::move(e));
    }

    void log_state(Tick t, std::int32_t node, const char* state) {
        LogEntry e;
        e.tick = t;
        e.type = LogType::StateChange;
        e.node = node;
        e.detail = std::make_unique<LogDetail>();
        e.detail->text = state;
        log_.append(std::move(e));
    }

    const SimInput& input_;
    SweepEngine sweep_engine_;
    RunLog log_;
    SplitMix64 rng_;
    std::map<NodeId, NodeAgent> agents_;
    std::vector<NodeId> joiner_ids_;  // ascending
    std::map<NodeId, Tick> join_ticks_;
    std::vector<std::vector<const EventRecord*>> by_window_;
    std::priority_queue<Scheduled, std::vector<Scheduled>, ScheduledAfter> queue_;
    std::uint64_t send_seq_ = 0;
    std::vector<Alarm> alarms_;
};

void Engine::validate() {
    input_.config.validate();
    for (const auto& node : input_.topology.nodes()) {
        if (input_.grants.find(node) == input_.grants.end()) {
            throw ScenarioError(ScenarioError::Category::InvariantViolation,
                                "no grant for node '" + node + "'");
        }
    }
    for (const auto& joiner : input_.joiners) {
        if (!input_.topology.has_node(joiner.node)) {
            throw ScenarioError(ScenarioError::Category::UnresolvedReference,
                                "joiner references unknown node '" + joiner.node + "'");
        }
        if (joiner.join_tick < 0) {
            throw ScenarioError(ScenarioError::Category::InvariantViolation,
                                "joiner '" + joiner.node + "' has negative join tick");
        }
        if (input_.topology.neighbors(joiner.node).empty()) {
            throw ScenarioError(ScenarioError::Category::InvariantViolation,
                                "joiner '" + joiner.node + "' is isolated and can never join");
        }
        if (join_ticks_.count(joiner.node) > 0) {
            throw ScenarioError(ScenarioError::Category::InvariantViolation,
                                "node '" + joiner.node + "' listed as joiner twice");
        }
        join_ticks_[joiner.node] = joiner.join_tick;
    }
    for (const auto& [node, tick] : join_ticks_) {
        (void)tick;
        joiner_ids_.push_back(node);
    }
    for (const auto& event : input_.trace) {
        if (!input_.topology.has_node(event.node)) {
            throw ScenarioError(ScenarioError::Category::UnresolvedReference,
                                "trace references unknown node '" + event.node + "'");
        }
        if (event.window < 0 || event.window >= input_.config.total_windows) {
            throw ScenarioError(ScenarioError::Category::InvariantViolation,
                                "trace event for node '" + event.node + "' in window " +
                                    std::to_string(event.window) + " outside run of " +
                                    std::to_string(input_.config.total_windows) + " windows");
        }
    }
}

void Engine::build_agents() {
    std::vector<NodeId> initial_members;
    for (const auto& node : input_.topology.nodes()) {
        agents_.emplace(node, NodeAgent(node, input_.topology.neighbors(node),
                                        AgentConfig{input_.policy, input_.config.alarm_ttl}));
        if (join_ticks_.count(node) == 0) {
            initial_members.push_back(node);
        }
    }
    for (const auto& node : initial_members) {
        auto& agent = agents_.at(node);
        agent.install_units({UnitKind::Collection, UnitKind::Detection});
        agent.activate(input_.grants.at(node), input_.catalog, 0);
        log_state(0, idx(node), "active");
    }
    for (auto& [node, agent] : agents_) {
        (void)node;
        for (const auto& member : initial_members) {
            agent.register_member(member);
        }
    }
}

void Engine::group_trace() {
    by_window_.resize(static_cast<std::size_t>(input_.config.total_windows));
    for (const auto& event : input_.trace) {
        by_window_[static_cast<std::size_t>(event.window)].push_back(&event);
    }
}

void Engine::send(Message msg) {
    LogEntry e;
    e.tick = msg.sent_at;
    e.type = LogType::MessageSent;
    e.node = idx(msg.to);
    e.peer = idx(msg.from);
    e.msg_kind = msg.kind;
    if (msg.alarm) {
        e.detail = std::make_unique<LogDetail>();
        e.detail->alarm_id = msg.alarm->alarm.alarm_id;
    }
    log_.append(std::move(e));

    const auto& delivery = input_.config.delivery;
    if (!delivery.lossless && rng_.next_unit() < delivery.loss_probability) {
        LogEntry drop;
        drop.tick = msg.sent_at;
        drop.type = LogType::MessageDropped;
        drop.node = idx(msg.to);
        drop.peer = idx(msg.from);
        drop.msg_kind = msg.kind;
        if (msg.alarm) {
            drop.detail = std::make_unique<LogDetail>();
            drop.detail->alarm_id = msg.alarm->alarm.alarm_id;
        }
        log_.append(std::move(drop));
        return;
    }
    queue_.push(Scheduled{msg.sent_at + input_.config.delay, send_seq_++, std::move(msg)});
}

void Engine::deliver_until(Tick t) {
    while (!queue_.empty() && queue_.top().deliver_at <= t) {
        Message msg = queue_.top().msg;
        queue_.pop();

        LogEntry e;
        e.tick = t;
        e.type = LogType::MessageDelivered;
        e.node = idx(msg.to);
        e.peer = idx(msg.from);
        e.msg_kind = msg.kind;
        if (msg.alarm) {
            e.hops = static_cast<std::int16_t>(msg.alarm->hops);
            e.detail = std::make_unique<LogDetail>();
            e.detail->alarm_id = msg.alarm->alarm.alarm_id;
        }
        log_.append(std::move(e));

        auto& agent = agents_.at(msg.to);
        auto res = agent.handle_message(msg, t);

        if (res.became_provisioned) {
            log_state(t, idx(msg.to), "provisioned");
            const WindowIndex start_window = t / input_.config.window_length;
            agent.activate(input_.grants.at(msg.to), input_.catalog, start_window);
            log_state(t, idx(msg.to), "active");
        }
        if (res.duplicate_provision) {
            log_warning(t, idx(msg.to), "duplicate unit provision ignored");
        }
        if (res.query_rejected) {
            log_warning(t, idx(msg.to), "existence test rejected query from '" + msg.from + "'");
        }
        if (msg.kind == MessageKind::AlarmMsg) {
            LogEntry logged;
            logged.tick = t;
            logged.type = LogType::AlarmLogged;
            logged.node = idx(msg.to);
            logged.hops = static_cast<std::int16_t>(msg.alarm->hops);
            if (res.alarm_duplicate) {
                logged.flags |= LogEntry::kDuplicate;
            }
            logged.detail = std::make_unique<LogDetail>();
            logged.detail->alarm_id = msg.alarm->alarm.alarm_id;
            log_.append(std::move(logged));
        }
        for (auto& out : res.outbound) {
            send(std::move(out));
        }
    }
}

void Engine::process_joins(Tick t) {
    for (const auto& node : joiner_ids_) {
        auto& agent = agents_.at(node);
        if (agent.state() != AgentState::Unprovisioned) {
            continue;
        }
        const Tick join_tick = join_ticks_.at(node);
        const bool first = t == join_tick;
        const bool retry = agent.join_pending() &&
                           t - agent.join_requested_at() >= input_.config.join_retry_timeout;
        if (!first && !retry) {
            continue;
        }
        if (auto msg = agent.request_join(t)) {
            if (retry) {
                log_warning(t, idx(node), "join timed out, retrying via '" + msg->to + "'");
            }
            send(std::move(*msg));
        }
    }
}

void Engine::ingest_window(WindowIndex w, Tick t) {
    for (const EventRecord* event : by_window_[static_cast<std::size_t>(w)]) {
        auto& agent = agents_.at(event->node);
        LogEntry e;
        e.tick = t;
        e.type = LogType::EventObserved;
        e.node = idx(event->node);
        e.window = static_cast<std::int32_t>(w);
        e.label = event->label;
        e.feature = feature_idx(event->feature);
        if (e.feature < 0) {
            e.detail = std::make_unique<LogDetail>();
            e.detail->text = event->feature;
        }
        if (agent.state() != AgentState::Active) {
            e.flags |= LogEntry::kDroppedInactive;
        } else if (agent.observe(*event) == ObserveOutcome::UnknownFeature) {
            e.flags |= LogEntry::kUnknownFeature;
        }
        log_.append(std::move(e));
    }
}

void Engine::close_window(WindowIndex w, Tick t) {
    std::vector<NodeAgent*> owners;
    for (auto& [node, agent] : agents_) {
        (void)node;
        if (agent.state() == AgentState::Active && agent.collector_window() == w) {
            owners.push_back(&agent);
        }
    }

    std::vector<FeatureVector> behaviors;
    behaviors.reserve(owners.size());
    std::vector<SweepItem> items;
    items.reserve(owners.size());
    for (auto* agent : owners) {
        behaviors.push_back(agent->close_current_window());
        items.push_back(SweepItem{&agent->profile(), &behaviors.back(), w});
    }

    const auto results = detect_sweep(items, input_.policy, sweep_engine_);

    for (std::size_t i = 0; i < owners.size(); ++i) {
        auto* agent = owners[i];
        const auto& result = results[i];
        auto commit = agent->commit_detection(result, t);

        LogEntry e;
        e.tick = t;
        e.type = LogType::Detection;
        e.node = idx(agent->id());
        e.window = static_cast<std::int32_t>(w);
        e.verdict = result.verdict;
        e.mode = result.mode;
        e.detail = std::make_unique<LogDetail>();
        e.detail->distance = result.distance;
        e.detail->score = result.score;
        e.detail->threshold = result.threshold;
        e.detail->deviating = narrow(result.deviating_features);
        e.detail->violating = narrow(result.violating_features);
        log_.append(std::move(e));

        if (commit.alarm) {
            alarms_.push_back(*commit.alarm);

            LogEntry raised;
            raised.tick = t;
            raised.type = LogType::AlarmRaised;
            raised.node = idx(agent->id());
            raised.window = static_cast<std::int32_t>(w);
            raised.detail = std::make_unique<LogDetail>();
            raised.detail->alarm_id = commit.alarm->alarm_id;
            raised.detail->violating = narrow(result.violating_features);
            for (const auto& recipient : commit.alarm->recipients) {
                raised.detail->recipients.push_back(idx(recipient));
            }
            log_.append(std::move(raised));

            LogEntry local;
            local.tick = t;
            local.type = LogType::AlarmLogged;
            local.node = idx(agent->id());
            local.flags |= LogEntry::kLocalDelivery;
            local.detail = std::make_unique<LogDetail>();
            local.detail->alarm_id = commit.alarm->alarm_id;
            log_.append(std::move(local));

            for (auto& msg : commit.alarm_messages) {
                send(std::move(msg));
            }
        }
    }
}

SimOutput Engine::run() {
    validate();
    build_agents();
    group_trace();

    const Tick window_length = input_.config.window_length;
    const WindowIndex total_windows = input_.config.total_windows;
    const Tick end = window_length * total_windows;
    log_.reserve(input_.trace.size() +
                 static_cast<std::size_t>(total_windows) * agents_.size() + 64);

    for (Tick t = 0; t <= end; ++t) {
        deliver_until(t);
        process_joins(t);
        // The boundary must run before ingestion: with window_length 1 both
        // land on the same tick, and the previous window has to close before
        // events of the current one arrive.
        if (t > 0 && t % window_length == 0) {
            close_window(t / window_length - 1, t);
        }
        if (t % window_length == window_length - 1 && t / window_length < total_windows) {
            ingest_window(t / window_length, t);
        }
    }
    // Drain in-flight messages past the final boundary.
    while (!queue_.empty()) {
        deliver_until(queue_.top().deliver_at);
    }

    SimOutput output{std::move(log_), std::move(alarms_), {}, {}, {}};
    for (auto& [node, agent] : agents_) {
        output.audit.emplace(node, agent.audit_trail());
        output.alarm_logs.emplace(node, agent.alarm_log());
        output.unknown_actions.emplace(node, agent.unknown_action_count());
    }
    return output;
}

}  // namespace

SimOutput run_simulation(const SimInput& input, SweepEngine engine) {
    Engine sim(input, engine);
    return sim.run();
}

}  // namespace ubinode
