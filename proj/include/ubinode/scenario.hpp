#pragma once

#include <string>
#include <vector>

#include "ubinode/simulator.hpp"

namespace ubinode {

// Declarative experiment document: one feature catalog, a topology with a
// grant per node, optional mid-run joiners, an event trace, optional
// injected intruders, and the detection + simulation settings.
struct Scenario {
    int spec_version = 1;
    CatalogPtr catalog;
    Topology topology;
    std::map<NodeId, AuthGrant> grants;
    std::vector<JoinPlan> joiners;
    std::vector<EventRecord> trace;
    std::vector<IntruderSpec> intruders;
    DetectionPolicy policy;
    SimConfig config;
    // Digest of the canonical document, frozen at parse time so later
    // overrides (seed, mode) keep identifying the original experiment.
    std::string digest;
};

// Parses and fully validates a scenario document. origin labels error
// messages (a file path, or "<inline>" for embedded text). Trace events may
// name features outside the catalog; those surface at run time through the
// unknown-action tally instead of failing here.
Scenario parse_scenario(const std::string& text, const std::string& origin = "<inline>");

// Reads the file and delegates to parse_scenario. A missing or unreadable
// file reports as a parse-category error.
Scenario load_scenario(const std::string& path);

// Canonical single-line JSON rendering with every default materialized,
// nodes/edges/joiners sorted, and trace/intruders in document order.
std::string canonical_json(const Scenario& scenario);

// 64-bit FNV-1a of canonical_json, as 16 lowercase hex digits.
std::string scenario_digest(const Scenario& scenario);

// Expands intruder specs into the trace and packages the scenario for the
// simulator.
SimInput to_sim_input(const Scenario& scenario);

SimOutput run_scenario(const Scenario& scenario, SweepEngine engine = SweepEngine::Serial);

}  // namespace ubinode
