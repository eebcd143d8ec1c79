#pragma once

#include <cstdint>
#include <string>

namespace ubinode {

// Node identifiers are opaque strings. All deterministic orderings over
// nodes ("ascending node-id order") are lexicographic on these strings.
using NodeId = std::string;

// Non-overlapping window index, starting at 0.
using WindowIndex = std::int64_t;

// Discrete simulation time.
using Tick = std::int64_t;

enum class Label : std::uint8_t { Benign, Malicious };

enum class Verdict : std::uint8_t { Normal, Anomaly };

const char* to_string(Label label) noexcept;
const char* to_string(Verdict verdict) noexcept;

}  // namespace ubinode
