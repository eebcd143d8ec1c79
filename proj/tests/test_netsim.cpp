#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ubinode/errors.hpp"
#include "ubinode/rng.hpp"
#include "ubinode/simulator.hpp"
#include "ubinode/topology.hpp"

using namespace ubinode;

namespace {

AuthGrant rw_grant(NodeId node) {
    AuthGrant g;
    g.node = std::move(node);
    g.permitted = {"read"};
    g.restricted = {"write"};
    return g;
}

// Triangle of nodes that each read once per window; c writes (restricted)
// in window 1, so exactly one anomaly fires there.
SimInput triangle_input() {
    SimInput in;
    in.topology = Topology::build({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}});
    in.catalog = FeatureCatalog::build({"read", "write"});
    for (const auto& node : in.topology.nodes()) {
        in.grants.emplace(node, rw_grant(node));
    }
    in.config.seed = 11;
    in.config.window_length = 2;
    in.config.total_windows = 3;
    in.config.delay = 1;
    for (WindowIndex w = 0; w < in.config.total_windows; ++w) {
        for (const auto& node : in.topology.nodes()) {
            in.trace.push_back(EventRecord{node, "read", w, Label::Benign});
        }
    }
    IntruderSpec spec{"c", 1, {"write"}};
    in.trace = inject_intruder(std::move(in.trace), spec, in.catalog, in.topology,
                               in.config.total_windows);
    return in;
}

std::string jsonl_of(const RunLog& log) {
    std::ostringstream out;
    log.write_jsonl(out);
    return out.str();
}

std::size_t count_type(const RunLog& log, LogType type) {
    return static_cast<std::size_t>(
        std::count_if(log.entries().begin(), log.entries().end(),
                      [type](const LogEntry& e) { return e.type == type; }));
}

ScenarioError::Category category_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const ScenarioError& e) {
        return e.category();
    }
    FAIL("expected a scenario error");
    return ScenarioError::Category::Parse;
}

}  // namespace

TEST_CASE("topology sorts nodes and neighbors and deduplicates edges") {
    auto topo = Topology::build({"c", "a", "b"}, {{"c", "a"}, {"a", "b"}, {"a", "c"}});
    CHECK(topo.nodes() == std::vector<NodeId>{"a", "b", "c"});
    CHECK(topo.neighbors("a") == std::vector<NodeId>{"b", "c"});
    CHECK(topo.neighbors("b") == std::vector<NodeId>{"a"});
    CHECK(topo.adjacent("a", "c"));
    CHECK_FALSE(topo.adjacent("b", "c"));
    CHECK(topo.node_index("a") == 0);
    CHECK(topo.node_index("c") == 2);
    CHECK(topo.has_node("b"));
    CHECK_FALSE(topo.has_node("zed"));
    CHECK_THROWS_AS(topo.neighbors("zed"), TopologyError);
}

TEST_CASE("topology rejects malformed graphs") {
    CHECK_THROWS_AS(Topology::build({""}, {}), TopologyError);
    CHECK_THROWS_AS(Topology::build({"a", "a"}, {}), TopologyError);
    CHECK_THROWS_AS(Topology::build({"a"}, {{"a", "a"}}), TopologyError);
    CHECK_THROWS_AS(Topology::build({"a"}, {{"a", "b"}}), TopologyError);
}

TEST_CASE("splitmix64 reproduces the reference sequence") {
    SplitMix64 zero(0);
    CHECK(zero.next() == 0xe220a8397b1dcdafULL);
    CHECK(zero.next() == 0x6e789e6aa1b965f4ULL);
    CHECK(zero.next() == 0x06c45d188009454fULL);
    CHECK(zero.next() == 0xf88bb8a8724c81ecULL);

    SplitMix64 forty_two(42);
    CHECK(forty_two.next() == 0xbdd732262feb6e95ULL);
    CHECK(forty_two.next() == 0x28efe333b266f103ULL);
    CHECK(forty_two.next() == 0x47526757130f9f52ULL);
    CHECK(forty_two.next() == 0x581ce1ff0e4ae394ULL);

    SplitMix64 beef(0xDEADBEEFULL);
    CHECK(beef.next() == 0x4adfb90f68c9eb9bULL);
    CHECK(beef.next() == 0xde586a3141a10922ULL);
    CHECK(beef.next() == 0x021fbc2f8e1cfc1dULL);
    CHECK(beef.next() == 0x7466ce737be16790ULL);
}

TEST_CASE("unit draws are frozen and stay inside [0, 1)") {
    SplitMix64 rng(42);
    CHECK(rng.next_unit() == doctest::Approx(0.7415648787718233).epsilon(1e-15));
    CHECK(rng.next_unit() == doctest::Approx(0.1599103928769201).epsilon(1e-15));
    CHECK(rng.next_unit() == doctest::Approx(0.27860113025513866).epsilon(1e-15));
    SplitMix64 sweep(123);
    for (int i = 0; i < 10000; ++i) {
        const double u = sweep.next_unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("sim config validation rejects each bad field") {
    SimConfig good;
    CHECK_NOTHROW(good.validate());

    SimConfig c = good;
    c.window_length = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = good;
    c.total_windows = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = good;
    c.delay = -1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = good;
    c.join_retry_timeout = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = good;
    c.alarm_ttl = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = good;
    c.delivery.lossless = false;
    c.delivery.loss_probability = 1.5;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = good;
    c.rng_algorithm = "mt19937";
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("intruder injection appends malicious events for the target window") {
    auto topo = Topology::build({"a", "b"}, {{"a", "b"}});
    auto catalog = FeatureCatalog::build({"read", "write", "exec"});
    std::vector<EventRecord> trace{EventRecord{"a", "read", 0, Label::Benign}};

    IntruderSpec spec{"b", 2, {"write", "exec"}};
    auto out = inject_intruder(trace, spec, catalog, topo, 3);
    REQUIRE(out.size() == 3);
    CHECK(out[0].label == Label::Benign);
    CHECK(out[1].node == "b");
    CHECK(out[1].window == 2);
    CHECK(out[1].label == Label::Malicious);
    CHECK(out[1].feature == "exec");  // set order
    CHECK(out[2].feature == "write");

    auto unknown_node = [&] {
        inject_intruder(trace, IntruderSpec{"zed", 0, {"read"}}, catalog, topo, 3);
    };
    CHECK(category_of(unknown_node) == ScenarioError::Category::UnresolvedReference);
    auto unknown_feature = [&] {
        inject_intruder(trace, IntruderSpec{"a", 0, {"fly"}}, catalog, topo, 3);
    };
    CHECK(category_of(unknown_feature) == ScenarioError::Category::UnresolvedReference);
    auto bad_window = [&] {
        inject_intruder(trace, IntruderSpec{"a", 3, {"read"}}, catalog, topo, 3);
    };
    CHECK(category_of(bad_window) == ScenarioError::Category::InvariantViolation);
}

TEST_CASE("simulation input validation names the offending element") {
    auto base = triangle_input();

    auto missing_grant = base;
    missing_grant.grants.erase("b");
    auto run_missing = [&] { run_simulation(missing_grant); };
    CHECK(category_of(run_missing) == ScenarioError::Category::InvariantViolation);

    auto ghost_trace = base;
    ghost_trace.trace.push_back(EventRecord{"zed", "read", 0, Label::Benign});
    auto run_ghost = [&] { run_simulation(ghost_trace); };
    CHECK(category_of(run_ghost) == ScenarioError::Category::UnresolvedReference);

    auto late_trace = base;
    late_trace.trace.push_back(EventRecord{"a", "read", 99, Label::Benign});
    auto run_late = [&] { run_simulation(late_trace); };
    CHECK(category_of(run_late) == ScenarioError::Category::InvariantViolation);

    auto double_join = base;
    double_join.joiners = {JoinPlan{"a", 0}, JoinPlan{"a", 2}};
    auto run_double = [&] { run_simulation(double_join); };
    CHECK(category_of(run_double) == ScenarioError::Category::InvariantViolation);
}

TEST_CASE("detection always happens on the tick after a window ends") {
    const auto input = triangle_input();
    const auto output = run_simulation(input);
    std::size_t seen = 0;
    for (const auto& e : output.log.entries()) {
        if (e.type != LogType::Detection) {
            continue;
        }
        ++seen;
        CHECK(e.tick == (static_cast<Tick>(e.window) + 1) * input.config.window_length);
    }
    CHECK(seen == 9);  // 3 nodes x 3 windows
}

TEST_CASE("one restricted action raises one alarm heard by the whole neighborhood") {
    const auto output = run_simulation(triangle_input());
    REQUIRE(output.alarms.size() == 1);
    const Alarm& alarm = output.alarms[0];
    CHECK(alarm.alarm_id == "c:1:0");
    CHECK(alarm.origin == "c");
    CHECK(alarm.window == 1);
    CHECK(alarm.result.score == 1);
    CHECK(alarm.recipients == std::vector<NodeId>{"a", "b", "c"});
    for (const auto& node : {"a", "b", "c"}) {
        REQUIRE(output.alarm_logs.at(node).size() == 1);
        CHECK(output.alarm_logs.at(node)[0] == alarm);
    }
    CHECK(output.audit.at("a").size() == 3);
    CHECK(output.audit.at("c")[1].verdict == Verdict::Anomaly);
    CHECK(output.audit.at("c")[0].verdict == Verdict::Normal);
}

TEST_CASE("identical inputs give byte-identical logs, and seeds are inert when lossless") {
    auto input = triangle_input();
    const auto first = jsonl_of(run_simulation(input).log);
    const auto second = jsonl_of(run_simulation(input).log);
    CHECK(first == second);
    CHECK_FALSE(first.empty());

    auto reseeded = input;
    reseeded.config.seed = input.config.seed + 1000;
    const auto third = jsonl_of(run_simulation(reseeded).log);
    CHECK(third == first);
}

TEST_CASE("serial and parallel sweeps produce the same run") {
    auto input = triangle_input();
    const auto serial = run_simulation(input, SweepEngine::Serial);
    const auto parallel = run_simulation(input, SweepEngine::OpenMp);
    CHECK(jsonl_of(serial.log) == jsonl_of(parallel.log));
    CHECK(serial.audit == parallel.audit);
    CHECK(serial.alarms == parallel.alarms);
}

TEST_CASE("certain loss silences the network but never the local log") {
    auto input = triangle_input();
    input.config.delivery.lossless = false;
    input.config.delivery.loss_probability = 1.0;
    const auto output = run_simulation(input);

    const auto sent = count_type(output.log, LogType::MessageSent);
    CHECK(sent > 0);
    CHECK(count_type(output.log, LogType::MessageDropped) == sent);
    CHECK(count_type(output.log, LogType::MessageDelivered) == 0);

    REQUIRE(output.alarms.size() == 1);
    CHECK(output.alarm_logs.at("c").size() == 1);
    CHECK(output.alarm_logs.at("a").empty());
    CHECK(output.alarm_logs.at("b").empty());
}

TEST_CASE("zero loss probability behaves exactly like lossless delivery") {
    auto lossless = triangle_input();
    auto lossy_zero = triangle_input();
    lossy_zero.config.delivery.lossless = false;
    lossy_zero.config.delivery.loss_probability = 0.0;
    const auto a = run_simulation(lossless);
    const auto b = run_simulation(lossy_zero);
    CHECK(count_type(b.log, LogType::MessageDropped) == 0);
    CHECK(a.alarm_logs == b.alarm_logs);
    CHECK(jsonl_of(a.log) == jsonl_of(b.log));
}

TEST_CASE("every sent message is either dropped or delivered by the end") {
    for (std::uint64_t seed : {7ULL, 8ULL, 9ULL, 10ULL}) {
        auto input = triangle_input();
        input.config.seed = seed;
        input.config.delivery.lossless = false;
        input.config.delivery.loss_probability = 0.35;
        input.config.delay = 2;
        const auto output = run_simulation(input);
        const auto sent = count_type(output.log, LogType::MessageSent);
        const auto dropped = count_type(output.log, LogType::MessageDropped);
        const auto delivered = count_type(output.log, LogType::MessageDelivered);
        CHECK(sent == dropped + delivered);
    }
}

TEST_CASE("single-tick windows close the old window before ingesting the new one") {
    SimInput in;
    in.topology = Topology::build({"a", "b"}, {{"a", "b"}});
    in.catalog = FeatureCatalog::build({"read", "write"});
    in.grants.emplace("a", rw_grant("a"));
    in.grants.emplace("b", rw_grant("b"));
    in.config.window_length = 1;
    in.config.total_windows = 3;
    for (WindowIndex w = 0; w < 3; ++w) {
        in.trace.push_back(EventRecord{"a", "read", w, Label::Benign});
        in.trace.push_back(EventRecord{"b", "read", w, Label::Benign});
    }
    const auto output = run_simulation(in);
    CHECK(output.audit.at("a").size() == 3);
    CHECK(output.audit.at("b").size() == 3);
    for (const auto& result : output.audit.at("a")) {
        CHECK(result.verdict == Verdict::Normal);
        CHECK(result.distance == 0);
    }
}

TEST_CASE("a forwarding budget of two carries an alarm across a line") {
    SimInput in;
    in.topology = Topology::build({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
    in.catalog = FeatureCatalog::build({"read", "write"});
    for (const auto& node : in.topology.nodes()) {
        in.grants.emplace(node, rw_grant(node));
    }
    in.config.window_length = 2;
    in.config.total_windows = 2;
    in.config.delay = 1;
    in.config.alarm_ttl = 2;
    in.trace.push_back(EventRecord{"b", "read", 0, Label::Benign});
    in.trace = inject_intruder(std::move(in.trace), IntruderSpec{"a", 0, {"write"}},
                               in.catalog, in.topology, in.config.total_windows);

    const auto output = run_simulation(in);
    REQUIRE(output.alarms.size() == 1);
    const Alarm& alarm = output.alarms[0];
    CHECK(alarm.origin == "a");
    CHECK(alarm.recipients == std::vector<NodeId>{"a", "b"});

    // a logs locally, b hears it one hop out, c two hops via b's forward.
    REQUIRE(output.alarm_logs.at("a").size() == 1);
    REQUIRE(output.alarm_logs.at("b").size() == 1);
    REQUIRE(output.alarm_logs.at("c").size() == 1);
    CHECK(output.alarm_logs.at("c")[0] == alarm);

    std::vector<std::int16_t> network_hops;
    for (const auto& e : output.log.entries()) {
        if (e.type == LogType::AlarmLogged && !e.has(LogEntry::kLocalDelivery)) {
            CHECK_FALSE(e.has(LogEntry::kDuplicate));
            network_hops.push_back(e.hops);
        }
    }
    CHECK(network_hops == std::vector<std::int16_t>{1, 2});
}

TEST_CASE("a slow mesh makes the joiner retry until a sponsor answers") {
    SimInput in;
    in.topology = Topology::build({"a", "b", "j"}, {{"a", "j"}, {"b", "j"}});
    in.catalog = FeatureCatalog::build({"read", "write"});
    for (const auto& node : in.topology.nodes()) {
        in.grants.emplace(node, rw_grant(node));
    }
    in.joiners.push_back(JoinPlan{"j", 0});
    in.config.window_length = 10;
    in.config.total_windows = 4;
    in.config.delay = 5;             // longer than the retry timeout
    in.config.join_retry_timeout = 4;
    for (WindowIndex w = 0; w < 4; ++w) {
        for (const auto& node : in.topology.nodes()) {
            in.trace.push_back(EventRecord{node, "read", w, Label::Benign});
        }
    }
    const auto output = run_simulation(in);
    const auto& log = output.log;
    const std::int32_t a = log.node_index("a");
    const std::int32_t b = log.node_index("b");
    const std::int32_t j = log.node_index("j");

    // Three queries go out: t0 to a, t4 to b (retry), t8 to a again.
    std::vector<std::pair<Tick, std::int32_t>> queries;
    for (const auto& e : log.entries()) {
        if (e.type == LogType::MessageSent && e.msg_kind == MessageKind::ExistenceQuery) {
            CHECK(e.peer == j);
            queries.emplace_back(e.tick, e.node);
        }
    }
    CHECK(queries == std::vector<std::pair<Tick, std::int32_t>>{{0, a}, {4, b}, {8, a}});

    std::vector<std::string> warnings;
    std::vector<Tick> warning_ticks;
    for (const auto& e : log.entries()) {
        if (e.type == LogType::Warning) {
            warnings.push_back(e.detail->text);
            warning_ticks.push_back(e.tick);
        }
    }
    REQUIRE(warnings.size() == 4);
    CHECK(warnings[0] == "join timed out, retrying via 'b'");
    CHECK(warnings[1] == "join timed out, retrying via 'a'");
    CHECK(warnings[2] == "existence test rejected query from 'j'");
    CHECK(warnings[3] == "duplicate unit provision ignored");
    CHECK(warning_ticks == std::vector<Tick>{4, 8, 13, 14});

    // a's units arrive at t10; both transitions land on the same tick.
    std::vector<std::pair<Tick, std::string>> j_states;
    for (const auto& e : log.entries()) {
        if (e.type == LogType::StateChange && e.node == j) {
            j_states.emplace_back(e.tick, e.detail->text);
        }
    }
    CHECK(j_states == std::vector<std::pair<Tick, std::string>>{
                          {10, "provisioned"}, {10, "active"}});

    // Window 0 closed before j was active, so its trail starts at window 1.
    REQUIRE(output.audit.at("j").size() == 3);
    CHECK(output.audit.at("j")[0].window == 1);
    CHECK(output.audit.at("a").size() == 4);

    // j's window-0 event arrived while it was still unprovisioned.
    bool saw_dropped = false;
    for (const auto& e : log.entries()) {
        if (e.type == LogType::EventObserved && e.node == j && e.window == 0) {
            CHECK(e.has(LogEntry::kDroppedInactive));
            saw_dropped = true;
        }
    }
    CHECK(saw_dropped);
}
