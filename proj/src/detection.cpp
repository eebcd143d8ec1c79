#include "ubinode/detection.hpp"

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ubinode {

namespace {

void require_same_length(const FeatureVector& v0, const FeatureVector& vt) {
    if (v0.size() != vt.size()) {
        throw VectorError("vector length mismatch: " + std::to_string(v0.size()) + " vs " +
                          std::to_string(vt.size()));
    }
}

}  // namespace

const char* to_string(DetectionMode mode) noexcept {
    return mode == DetectionMode::StrictLiteral ? "strict_literal" : "violation_only";
}

const char* to_string(SweepEngine engine) noexcept {
    return engine == SweepEngine::OpenMp ? "openmp" : "serial";
}

std::uint32_t distance(const FeatureVector& v0, const FeatureVector& vt) {
    require_same_length(v0, vt);
    const auto a = v0.bits();
    const auto b = vt.bits();
    std::uint32_t sum = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        sum += a[k] != b[k] ? 1u : 0u;
    }
    return sum;
}

std::uint32_t violation_count(const FeatureVector& v0, const FeatureVector& vt) {
    require_same_length(v0, vt);
    const auto a = v0.bits();
    const auto b = vt.bits();
    std::uint32_t count = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        count += (a[k] == 0 && b[k] == 1) ? 1u : 0u;
    }
    return count;
}

Verdict classify(std::uint32_t score, const DetectionPolicy& policy) noexcept {
    return score > policy.threshold ? Verdict::Anomaly : Verdict::Normal;
}

DetectionResult detect(const NodeProfile& profile, const FeatureVector& behavior,
                       const DetectionPolicy& policy, WindowIndex window) {
    require_same_length(profile.vector, behavior);
    const auto v0 = profile.vector.bits();
    const auto vt = behavior.bits();

    DetectionResult result;
    result.node = profile.node;
    result.window = window;
    result.mode = policy.mode;
    result.threshold = policy.threshold;
    for (std::size_t k = 0; k < v0.size(); ++k) {
        if (v0[k] != vt[k]) {
            result.deviating_features.push_back(k);
            if (v0[k] == 0) {
                result.violating_features.push_back(k);
            }
        }
    }
    result.distance = static_cast<std::uint32_t>(result.deviating_features.size());
    result.score = policy.mode == DetectionMode::StrictLiteral
                       ? result.distance
                       : static_cast<std::uint32_t>(result.violating_features.size());
    result.verdict = classify(result.score, policy);
    return result;
}

bool openmp_available() noexcept {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

std::vector<DetectionResult> detect_sweep(std::span<const SweepItem> items,
                                          const DetectionPolicy& policy, SweepEngine engine) {
    std::vector<DetectionResult> results(items.size());
#ifdef _OPENMP
    if (engine == SweepEngine::OpenMp) {
        const auto count = static_cast<std::int64_t>(items.size());
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < count; ++i) {
            const auto& item = items[static_cast<std::size_t>(i)];
            results[static_cast<std::size_t>(i)] =
                detect(*item.profile, *item.behavior, policy, item.window);
        }
        return results;
    }
#else
    (void)engine;
#endif
    for (std::size_t i = 0; i < items.size(); ++i) {
        results[i] = detect(*items[i].profile, *items[i].behavior, policy, items[i].window);
    }
    return results;
}

}  // namespace ubinode
