#include "ubinode/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <iomanip>
#include <limits>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace ubinode {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(ScenarioError::Category category, const std::string& origin,
                       const std::string& message) {
    throw ScenarioError(category, origin + ": " + message);
}

[[noreturn]] void fail_invariant(const std::string& origin, const std::string& message) {
    fail(ScenarioError::Category::InvariantViolation, origin, message);
}

[[noreturn]] void fail_unresolved(const std::string& origin, const std::string& message) {
    fail(ScenarioError::Category::UnresolvedReference, origin, message);
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& context, const std::string& origin) {
    for (const auto& item : obj.items()) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* key) {
                return item.key() == key;
            }) == allowed.end()) {
            fail_invariant(origin, context + " has unrecognized field '" + item.key() + "'");
        }
    }
}

const json& require_field(const json& obj, const char* key, const std::string& context,
                          const std::string& origin) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        fail_invariant(origin, context + " is missing required field '" + key + "'");
    }
    return *it;
}

const json* optional_field(const json& obj, const char* key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

const json& as_object(const json& v, const std::string& context, const std::string& origin) {
    if (!v.is_object()) {
        fail_invariant(origin, context + " must be an object");
    }
    return v;
}

const json& as_array(const json& v, const std::string& context, const std::string& origin) {
    if (!v.is_array()) {
        fail_invariant(origin, context + " must be an array");
    }
    return v;
}

std::string as_string(const json& v, const std::string& context, const std::string& origin) {
    if (!v.is_string()) {
        fail_invariant(origin, context + " must be a string");
    }
    return v.get<std::string>();
}

std::int64_t as_int(const json& v, const std::string& context, const std::string& origin) {
    if (!v.is_number_integer()) {
        fail_invariant(origin, context + " must be an integer");
    }
    return v.get<std::int64_t>();
}

std::uint64_t as_uint(const json& v, const std::string& context, const std::string& origin) {
    if (!(v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0))) {
        fail_invariant(origin, context + " must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

double as_number(const json& v, const std::string& context, const std::string& origin) {
    if (!v.is_number()) {
        fail_invariant(origin, context + " must be a number");
    }
    return v.get<double>();
}

bool as_bool(const json& v, const std::string& context, const std::string& origin) {
    if (!v.is_boolean()) {
        fail_invariant(origin, context + " must be a boolean");
    }
    return v.get<bool>();
}

std::vector<std::string> as_string_array(const json& v, const std::string& context,
                                         const std::string& origin) {
    std::vector<std::string> out;
    for (const auto& item : as_array(v, context, origin)) {
        out.push_back(as_string(item, context + " entry", origin));
    }
    return out;
}

Label parse_label(const std::string& text, const std::string& context,
                  const std::string& origin) {
    if (text == "benign") {
        return Label::Benign;
    }
    if (text == "malicious") {
        return Label::Malicious;
    }
    fail_invariant(origin, context + " has unknown label '" + text +
                               "' (expected benign or malicious)");
}

DetectionMode parse_mode(const std::string& text, const std::string& origin) {
    if (text == "violation_only") {
        return DetectionMode::ViolationOnly;
    }
    if (text == "strict_literal") {
        return DetectionMode::StrictLiteral;
    }
    fail_invariant(origin, "unknown detection mode '" + text +
                               "' (expected violation_only or strict_literal)");
}

DetectionPolicy parse_detection(const json& v, const std::string& origin) {
    DetectionPolicy policy;
    const auto& obj = as_object(v, "detection", origin);
    reject_unknown_keys(obj, {"mode", "threshold"}, "detection", origin);
    if (const json* mode = optional_field(obj, "mode")) {
        policy.mode = parse_mode(as_string(*mode, "detection mode", origin), origin);
    }
    if (const json* threshold = optional_field(obj, "threshold")) {
        const std::int64_t raw = as_int(*threshold, "detection threshold", origin);
        if (raw < 0 || raw > std::numeric_limits<std::uint32_t>::max()) {
            fail_invariant(origin, "detection threshold must be in [0, 2^32)");
        }
        policy.threshold = static_cast<std::uint32_t>(raw);
    }
    return policy;
}

SimConfig parse_sim(const json& v, const std::string& origin) {
    SimConfig config;
    const auto& obj = as_object(v, "sim", origin);
    reject_unknown_keys(obj,
                        {"seed", "window_length", "total_windows", "delay",
                         "join_retry_timeout", "alarm_ttl", "rng", "delivery"},
                        "sim", origin);
    if (const json* f = optional_field(obj, "seed")) {
        config.seed = as_uint(*f, "sim seed", origin);
    }
    if (const json* f = optional_field(obj, "window_length")) {
        config.window_length = as_int(*f, "sim window_length", origin);
    }
    if (const json* f = optional_field(obj, "total_windows")) {
        config.total_windows = as_int(*f, "sim total_windows", origin);
    }
    if (const json* f = optional_field(obj, "delay")) {
        config.delay = as_int(*f, "sim delay", origin);
    }
    if (const json* f = optional_field(obj, "join_retry_timeout")) {
        config.join_retry_timeout = as_int(*f, "sim join_retry_timeout", origin);
    }
    if (const json* f = optional_field(obj, "alarm_ttl")) {
        config.alarm_ttl = as_int(*f, "sim alarm_ttl", origin);
    }
    if (const json* f = optional_field(obj, "rng")) {
        config.rng_algorithm = as_string(*f, "sim rng", origin);
    }
    if (const json* f = optional_field(obj, "delivery")) {
        const auto& delivery = as_object(*f, "delivery", origin);
        reject_unknown_keys(delivery, {"lossless", "loss_probability"}, "delivery", origin);
        if (const json* g = optional_field(delivery, "lossless")) {
            config.delivery.lossless = as_bool(*g, "delivery lossless", origin);
        }
        if (const json* g = optional_field(delivery, "loss_probability")) {
            config.delivery.loss_probability = as_number(*g, "delivery loss_probability", origin);
        }
    }
    if (config.delivery.lossless && config.delivery.loss_probability > 0.0) {
        fail_invariant(origin,
                       "delivery is lossless but loss_probability > 0; set lossless to false");
    }
    try {
        config.validate();
    } catch (const ConfigError& e) {
        fail_invariant(origin, e.what());
    }
    return config;
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ScenarioError::Category::Parse, origin, e.what());
    }
    if (!doc.is_object()) {
        fail_invariant(origin, "top level must be an object");
    }
    reject_unknown_keys(doc,
                        {"spec_version", "catalog", "nodes", "edges", "joiners", "trace",
                         "intruders", "detection", "sim"},
                        "scenario", origin);

    Scenario scenario;

    const std::int64_t version =
        as_int(require_field(doc, "spec_version", "scenario", origin), "spec_version", origin);
    if (version != 1) {
        fail_invariant(origin, "unsupported spec_version " + std::to_string(version) +
                                   " (this build reads version 1)");
    }
    scenario.spec_version = 1;

    try {
        scenario.catalog = FeatureCatalog::build(
            as_string_array(require_field(doc, "catalog", "scenario", origin), "catalog",
                            origin));
    } catch (const CatalogError& e) {
        fail_invariant(origin, e.what());
    }

    std::vector<NodeId> node_ids;
    for (const auto& entry :
         as_array(require_field(doc, "nodes", "scenario", origin), "nodes", origin)) {
        const auto& node = as_object(entry, "node entry", origin);
        reject_unknown_keys(node, {"id", "permitted", "restricted"}, "node entry", origin);
        const NodeId id =
            as_string(require_field(node, "id", "node entry", origin), "node id", origin);
        if (scenario.grants.count(id) > 0) {
            fail_invariant(origin, "node '" + id + "' declared twice");
        }
        AuthGrant grant;
        grant.node = id;
        for (auto& name : as_string_array(
                 require_field(node, "permitted", "node '" + id + "'", origin),
                 "node '" + id + "' permitted", origin)) {
            grant.permitted.insert(std::move(name));
        }
        for (auto& name : as_string_array(
                 require_field(node, "restricted", "node '" + id + "'", origin),
                 "node '" + id + "' restricted", origin)) {
            grant.restricted.insert(std::move(name));
        }
        node_ids.push_back(id);
        scenario.grants.emplace(std::move(id), std::move(grant));
    }

    std::vector<std::pair<NodeId, NodeId>> edges;
    if (const json* edges_doc = optional_field(doc, "edges")) {
        for (const auto& entry : as_array(*edges_doc, "edges", origin)) {
            const auto& pair = as_array(entry, "edge", origin);
            if (pair.size() != 2) {
                fail_invariant(origin, "edge must be a two-element array");
            }
            NodeId a = as_string(pair[0], "edge endpoint", origin);
            NodeId b = as_string(pair[1], "edge endpoint", origin);
            for (const NodeId* endpoint : {&a, &b}) {
                if (scenario.grants.count(*endpoint) == 0) {
                    fail_unresolved(origin,
                                    "edge references unknown node '" + *endpoint + "'");
                }
            }
            edges.emplace_back(std::move(a), std::move(b));
        }
    }
    try {
        scenario.topology = Topology::build(node_ids, edges);
    } catch (const TopologyError& e) {
        fail_invariant(origin, e.what());
    }

    for (const auto& [id, grant] : scenario.grants) {
        for (const auto* side : {&grant.permitted, &grant.restricted}) {
            for (const auto& name : *side) {
                if (!scenario.catalog->index_of(name)) {
                    fail_unresolved(origin, "node '" + id + "' granted unknown feature '" +
                                                name + "'");
                }
            }
        }
        for (const auto& name : grant.permitted) {
            if (grant.restricted.count(name) > 0) {
                fail_invariant(origin, "node '" + id + "' has feature '" + name +
                                           "' both permitted and restricted");
            }
        }
        for (const auto& name : scenario.catalog->names()) {
            if (grant.permitted.count(name) == 0 && grant.restricted.count(name) == 0) {
                fail_invariant(origin, "grant for node '" + id + "' leaves feature '" + name +
                                           "' unclassified");
            }
        }
    }

    if (const json* detection = optional_field(doc, "detection")) {
        scenario.policy = parse_detection(*detection, origin);
    }
    if (const json* sim = optional_field(doc, "sim")) {
        scenario.config = parse_sim(*sim, origin);
    }
    const Tick run_end = scenario.config.window_length * scenario.config.total_windows;

    if (const json* joiners = optional_field(doc, "joiners")) {
        std::set<NodeId> seen;
        for (const auto& entry : as_array(*joiners, "joiners", origin)) {
            const auto& joiner = as_object(entry, "joiner", origin);
            reject_unknown_keys(joiner, {"node", "join_tick"}, "joiner", origin);
            JoinPlan plan;
            plan.node = as_string(require_field(joiner, "node", "joiner", origin),
                                  "joiner node", origin);
            plan.join_tick = as_int(require_field(joiner, "join_tick", "joiner", origin),
                                    "join_tick", origin);
            if (scenario.grants.count(plan.node) == 0) {
                fail_unresolved(origin, "joiner references unknown node '" + plan.node + "'");
            }
            if (!seen.insert(plan.node).second) {
                fail_invariant(origin, "node '" + plan.node + "' listed as joiner twice");
            }
            if (plan.join_tick < 0 || plan.join_tick >= run_end) {
                fail_invariant(origin, "joiner '" + plan.node + "' join tick " +
                                           std::to_string(plan.join_tick) +
                                           " outside run of " + std::to_string(run_end) +
                                           " ticks");
            }
            if (scenario.topology.neighbors(plan.node).empty()) {
                fail_invariant(origin, "joiner '" + plan.node +
                                           "' is isolated and can never be provisioned");
            }
            scenario.joiners.push_back(std::move(plan));
        }
    }

    if (const json* trace = optional_field(doc, "trace")) {
        for (const auto& entry : as_array(*trace, "trace", origin)) {
            const auto& record = as_object(entry, "trace record", origin);
            reject_unknown_keys(record, {"window", "node", "feature", "label"}, "trace record",
                                origin);
            EventRecord event;
            event.window = as_int(require_field(record, "window", "trace record", origin),
                                  "trace window", origin);
            event.node = as_string(require_field(record, "node", "trace record", origin),
                                   "trace node", origin);
            event.feature = as_string(require_field(record, "feature", "trace record", origin),
                                      "trace feature", origin);
            if (const json* label = optional_field(record, "label")) {
                event.label =
                    parse_label(as_string(*label, "trace label", origin), "trace record", origin);
            }
            if (scenario.grants.count(event.node) == 0) {
                fail_unresolved(origin, "trace references unknown node '" + event.node + "'");
            }
            if (event.window < 0 || event.window >= scenario.config.total_windows) {
                fail_invariant(origin,
                               "trace event for node '" + event.node + "' in window " +
                                   std::to_string(event.window) + " outside run of " +
                                   std::to_string(scenario.config.total_windows) + " windows");
            }
            scenario.trace.push_back(std::move(event));
        }
    }

    if (const json* intruders = optional_field(doc, "intruders")) {
        for (const auto& entry : as_array(*intruders, "intruders", origin)) {
            const auto& intruder = as_object(entry, "intruder", origin);
            reject_unknown_keys(intruder, {"node", "window", "features"}, "intruder", origin);
            IntruderSpec spec;
            spec.target_node = as_string(require_field(intruder, "node", "intruder", origin),
                                         "intruder node", origin);
            spec.window = as_int(require_field(intruder, "window", "intruder", origin),
                                 "intruder window", origin);
            for (auto& name : as_string_array(
                     require_field(intruder, "features", "intruder", origin),
                     "intruder features", origin)) {
                spec.features.insert(std::move(name));
            }
            if (scenario.grants.count(spec.target_node) == 0) {
                fail_unresolved(origin,
                                "intruder targets unknown node '" + spec.target_node + "'");
            }
            for (const auto& name : spec.features) {
                if (!scenario.catalog->index_of(name)) {
                    fail_unresolved(origin, "intruder uses unknown feature '" + name + "'");
                }
            }
            if (spec.window < 0 || spec.window >= scenario.config.total_windows) {
                fail_invariant(origin, "intruder window " + std::to_string(spec.window) +
                                           " outside run of " +
                                           std::to_string(scenario.config.total_windows) +
                                           " windows");
            }
            scenario.intruders.push_back(std::move(spec));
        }
    }

    scenario.digest = scenario_digest(scenario);
    return scenario;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        fail(ScenarioError::Category::Parse, path, "cannot open scenario file");
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    if (!file.good() && !file.eof()) {
        fail(ScenarioError::Category::Parse, path, "cannot read scenario file");
    }
    return parse_scenario(buffer.str(), path);
}

std::string canonical_json(const Scenario& scenario) {
    json doc;
    doc["spec_version"] = scenario.spec_version;
    doc["catalog"] = scenario.catalog->names();

    json nodes = json::array();
    for (const auto& id : scenario.topology.nodes()) {
        const auto& grant = scenario.grants.at(id);
        json node;
        node["id"] = id;
        node["permitted"] = grant.permitted;
        node["restricted"] = grant.restricted;
        nodes.push_back(std::move(node));
    }
    doc["nodes"] = std::move(nodes);

    json edges = json::array();
    for (const auto& id : scenario.topology.nodes()) {
        for (const auto& neighbor : scenario.topology.neighbors(id)) {
            if (id < neighbor) {
                edges.push_back(json::array({id, neighbor}));
            }
        }
    }
    doc["edges"] = std::move(edges);

    json joiners = json::array();
    auto sorted_joiners = scenario.joiners;
    std::sort(sorted_joiners.begin(), sorted_joiners.end(),
              [](const JoinPlan& a, const JoinPlan& b) { return a.node < b.node; });
    for (const auto& plan : sorted_joiners) {
        json joiner;
        joiner["node"] = plan.node;
        joiner["join_tick"] = plan.join_tick;
        joiners.push_back(std::move(joiner));
    }
    doc["joiners"] = std::move(joiners);

    json trace = json::array();
    for (const auto& event : scenario.trace) {
        json record;
        record["window"] = event.window;
        record["node"] = event.node;
        record["feature"] = event.feature;
        record["label"] = to_string(event.label);
        trace.push_back(std::move(record));
    }
    doc["trace"] = std::move(trace);

    json intruders = json::array();
    for (const auto& spec : scenario.intruders) {
        json intruder;
        intruder["node"] = spec.target_node;
        intruder["window"] = spec.window;
        intruder["features"] = spec.features;
        intruders.push_back(std::move(intruder));
    }
    doc["intruders"] = std::move(intruders);

    json detection;
    detection["mode"] = to_string(scenario.policy.mode);
    detection["threshold"] = scenario.policy.threshold;
    doc["detection"] = std::move(detection);

    json sim;
    sim["seed"] = scenario.config.seed;
    sim["window_length"] = scenario.config.window_length;
    sim["total_windows"] = scenario.config.total_windows;
    sim["delay"] = scenario.config.delay;
    sim["join_retry_timeout"] = scenario.config.join_retry_timeout;
    sim["alarm_ttl"] = scenario.config.alarm_ttl;
    sim["rng"] = scenario.config.rng_algorithm;
    json delivery;
    delivery["lossless"] = scenario.config.delivery.lossless;
    delivery["loss_probability"] = scenario.config.delivery.loss_probability;
    sim["delivery"] = std::move(delivery);
    doc["sim"] = std::move(sim);

    return doc.dump();
}

std::string scenario_digest(const Scenario& scenario) {
    const std::string canonical = canonical_json(scenario);
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const unsigned char c : canonical) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << hash;
    return out.str();
}

SimInput to_sim_input(const Scenario& scenario) {
    SimInput input{scenario.topology, scenario.catalog,  scenario.grants, scenario.joiners,
                   scenario.trace,    scenario.policy,   scenario.config};
    for (const auto& spec : scenario.intruders) {
        input.trace = inject_intruder(std::move(input.trace), spec, input.catalog,
                                      input.topology, input.config.total_windows);
    }
    return input;
}

SimOutput run_scenario(const Scenario& scenario, SweepEngine engine) {
    return run_simulation(to_sim_input(scenario), engine);
}

}  // namespace ubinode
