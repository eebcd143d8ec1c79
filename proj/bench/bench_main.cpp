// Compares the serial reference sweep against the OpenMP sweep, first on a
// raw batch of profile/behavior pairs, then inside a full desk-scale
// simulation. Both paths must agree bit for bit; the tables report wall
// times and the speedup.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ubinode/scenario.hpp"

using namespace ubinode;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string feature_name(int i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "f%02d", i);
    return buf;
}

std::string node_name(int i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "n%03d", i);
    return buf;
}

// 100-node ring, 32 features, half permitted per node by parity, ten benign
// events per node per window drawn from the permitted half, plus a few
// injected intruders so the alarm path runs too.
Scenario desk_scenario(int nodes, int features, WindowIndex windows) {
    Scenario s;
    std::vector<std::string> names;
    for (int i = 0; i < features; ++i) {
        names.push_back(feature_name(i));
    }
    s.catalog = FeatureCatalog::build(names);

    std::vector<NodeId> ids;
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (int i = 0; i < nodes; ++i) {
        ids.push_back(node_name(i));
        edges.emplace_back(node_name(i), node_name((i + 1) % nodes));
        AuthGrant grant;
        grant.node = ids.back();
        for (int f = 0; f < features; ++f) {
            auto& side = (f + i) % 2 == 0 ? grant.permitted : grant.restricted;
            side.insert(names[static_cast<std::size_t>(f)]);
        }
        s.grants.emplace(ids.back(), std::move(grant));
    }
    s.topology = Topology::build(ids, edges);

    SplitMix64 rng(12345);
    for (int i = 0; i < nodes; ++i) {
        std::vector<std::string> permitted(s.grants.at(ids[static_cast<std::size_t>(i)])
                                               .permitted.begin(),
                                           s.grants.at(ids[static_cast<std::size_t>(i)])
                                               .permitted.end());
        for (WindowIndex w = 0; w < windows; ++w) {
            for (int e = 0; e < 10; ++e) {
                s.trace.push_back(EventRecord{
                    ids[static_cast<std::size_t>(i)],
                    permitted[rng.next_below(permitted.size())], w, Label::Benign});
            }
        }
    }
    for (int k = 0; k < 10; ++k) {
        IntruderSpec spec;
        spec.target_node = ids[static_cast<std::size_t>((k * 17) % nodes)];
        spec.window = (k * 97) % windows;
        const auto& restricted =
            s.grants.at(spec.target_node).restricted;
        spec.features.insert(*restricted.begin());
        s.intruders.push_back(std::move(spec));
    }

    s.config.seed = 99;
    s.config.window_length = 1;
    s.config.total_windows = windows;
    s.config.delay = 1;
    return s;
}

void bench_sweep() {
    constexpr int kFeatures = 32;
    constexpr int kPairs = 100000;

    const auto catalog = [&] {
        std::vector<std::string> names;
        for (int i = 0; i < kFeatures; ++i) {
            names.push_back(feature_name(i));
        }
        return FeatureCatalog::build(names);
    }();

    SplitMix64 rng(7);
    std::vector<NodeProfile> profiles;
    std::vector<FeatureVector> behaviors;
    profiles.reserve(kPairs);
    behaviors.reserve(kPairs);
    for (int i = 0; i < kPairs; ++i) {
        std::vector<std::uint8_t> p(kFeatures), b(kFeatures);
        for (int f = 0; f < kFeatures; ++f) {
            p[static_cast<std::size_t>(f)] = rng.next() & 1;
            b[static_cast<std::size_t>(f)] = rng.next() & 1;
        }
        profiles.push_back(NodeProfile{node_name(i % 100),
                                       FeatureVector::from_bits(catalog, p), 0});
        behaviors.push_back(FeatureVector::from_bits(catalog, b));
    }
    std::vector<SweepItem> items;
    items.reserve(kPairs);
    for (int i = 0; i < kPairs; ++i) {
        items.push_back(SweepItem{&profiles[static_cast<std::size_t>(i)],
                                  &behaviors[static_cast<std::size_t>(i)],
                                  i / 100});
    }

    const DetectionPolicy policy;
    auto start = Clock::now();
    const auto serial = detect_sweep(items, policy, SweepEngine::Serial);
    const double serial_s = seconds_since(start);

    start = Clock::now();
    const auto parallel = detect_sweep(items, policy, SweepEngine::OpenMp);
    const double parallel_s = seconds_since(start);

    std::printf("sweep   %7d pairs  serial %.4fs  openmp %.4fs  speedup %.2fx  equal %s\n",
                kPairs, serial_s, parallel_s, serial_s / parallel_s,
                serial == parallel ? "yes" : "NO");
}

void bench_simulation() {
    const Scenario scenario = desk_scenario(100, 32, 1000);

    auto start = Clock::now();
    const SimOutput serial = run_scenario(scenario, SweepEngine::Serial);
    const double serial_s = seconds_since(start);

    start = Clock::now();
    const SimOutput parallel = run_scenario(scenario, SweepEngine::OpenMp);
    const double parallel_s = seconds_since(start);

    const bool equal = serial.audit == parallel.audit && serial.alarms == parallel.alarms;
    std::printf("simrun  100x1000 wins  serial %.4fs  openmp %.4fs  speedup %.2fx  equal %s\n",
                serial_s, parallel_s, serial_s / parallel_s, equal ? "yes" : "NO");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("openmp not compiled in; both engines run the serial reference\n");
#endif
    bench_sweep();
    bench_simulation();
    return 0;
}
