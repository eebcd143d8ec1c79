#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ubinode/model.hpp"
#include "ubinode/types.hpp"

namespace ubinode {

// strict_literal scores the raw Hamming distance: any deviation from the
// profile counts, including permissions left unused in a window.
// violation_only scores only restricted-feature accesses (profile 0,
// behavior 1), the signature of an intruder on the node.
enum class DetectionMode : std::uint8_t { StrictLiteral, ViolationOnly };

struct DetectionPolicy {
    DetectionMode mode = DetectionMode::ViolationOnly;
    std::uint32_t threshold = 0;
};

struct DetectionResult {
    NodeId node;
    WindowIndex window = 0;
    std::uint32_t distance = 0;  // Hamming distance between V(0) and V(t)
    std::uint32_t score = 0;     // mode-selected score the verdict is based on
    DetectionMode mode = DetectionMode::ViolationOnly;
    std::uint32_t threshold = 0;
    Verdict verdict = Verdict::Normal;
    std::vector<std::size_t> deviating_features;  // ascending indices where V(0) != V(t)
    std::vector<std::size_t> violating_features;  // subset with V(0)=0 and V(t)=1

    bool operator==(const DetectionResult&) const = default;
};

const char* to_string(DetectionMode mode) noexcept;

// Sum over k of |v0[k] - vt[k]|. Throws VectorError on length mismatch.
std::uint32_t distance(const FeatureVector& v0, const FeatureVector& vt);

// Number of positions with v0[k]=0 and vt[k]=1.
std::uint32_t violation_count(const FeatureVector& v0, const FeatureVector& vt);

// Anomaly iff score exceeds the threshold.
Verdict classify(std::uint32_t score, const DetectionPolicy& policy) noexcept;

// One node, one window: compare behavior against the profile and classify.
DetectionResult detect(const NodeProfile& profile, const FeatureVector& behavior,
                       const DetectionPolicy& policy, WindowIndex window);

// Batch detection across independent nodes. Per-node detection shares no
// state, so the sweep parallelizes without changing a single bit of output.
struct SweepItem {
    const NodeProfile* profile = nullptr;
    const FeatureVector* behavior = nullptr;
    WindowIndex window = 0;
};

enum class SweepEngine : std::uint8_t { Serial, OpenMp };

// True when the library was built with OpenMP; otherwise the OpenMp engine
// falls back to the serial loop.
bool openmp_available() noexcept;

const char* to_string(SweepEngine engine) noexcept;

// Results are indexed like the input span regardless of engine.
std::vector<DetectionResult> detect_sweep(std::span<const SweepItem> items,
                                          const DetectionPolicy& policy, SweepEngine engine);

}  // namespace ubinode
