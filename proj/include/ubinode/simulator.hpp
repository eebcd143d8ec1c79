#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ubinode/agent.hpp"
#include "ubinode/collection.hpp"
#include "ubinode/detection.hpp"
#include "ubinode/model.hpp"
#include "ubinode/rng.hpp"
#include "ubinode/run_log.hpp"
#include "ubinode/topology.hpp"

namespace ubinode {

struct Delivery {
    bool lossless = true;
    double loss_probability = 0.0;  // used only when lossless is false
};

struct SimConfig {
    std::uint64_t seed = 0;
    Tick window_length = 1;        // ticks per window, >= 1
    WindowIndex total_windows = 1; // >= 1
    Delivery delivery;
    Tick delay = 1;                // fixed per-hop delivery delay, >= 0
    Tick join_retry_timeout = 4;   // ticks to wait before trying the next neighbor
    int alarm_ttl = 1;             // one-hop dissemination by default
    std::string rng_algorithm = SplitMix64::kAlgorithmName;

    void validate() const;  // throws ConfigError
};

// A compromised-node attack: events injected at the target during one
// window, labeled malicious for ground truth.
struct IntruderSpec {
    NodeId target_node;
    WindowIndex window = 0;
    std::set<std::string> features;
};

// Appends the spec's events to the trace. Throws on unknown node/feature
// or a window outside the run.
std::vector<EventRecord> inject_intruder(std::vector<EventRecord> trace,
                                         const IntruderSpec& spec, const CatalogPtr& catalog,
                                         const Topology& topology, WindowIndex total_windows);

struct JoinPlan {
    NodeId node;
    Tick join_tick = 0;
};

struct SimInput {
    Topology topology;
    CatalogPtr catalog;
    std::map<NodeId, AuthGrant> grants;  // one per node, joiners included
    std::vector<JoinPlan> joiners;       // everyone else is Active from tick 0
    std::vector<EventRecord> trace;      // intruder events already injected
    DetectionPolicy policy;
    SimConfig config;
};

struct SimOutput {
    RunLog log;
    std::vector<Alarm> alarms;  // every alarm raised, in raise order
    std::map<NodeId, std::vector<DetectionResult>> audit;
    std::map<NodeId, std::vector<Alarm>> alarm_logs;
    std::map<NodeId, std::uint64_t> unknown_actions;
};

// Deterministic discrete-event run. Ticks advance from 0; window w spans
// ticks [w*L, (w+1)*L). Each tick processes, in order: message delivery,
// join requests, the window boundary (at the first tick after a window),
// and event ingestion (at the last tick of one). At a boundary every
// eligible agent is swept through detection and results are committed in
// ascending node-id order. After the final boundary the queue is drained so
// in-flight alarms still land.
SimOutput run_simulation(const SimInput& input, SweepEngine engine = SweepEngine::Serial);

}  // namespace ubinode
