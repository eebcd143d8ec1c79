#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ubinode/detection.hpp"
#include "ubinode/types.hpp"

namespace ubinode {

// The "two units" a neighbor hands to a joining node.
enum class UnitKind : std::uint8_t { Collection, Detection };

// Detection verdict addressed to the origin and its one-hop neighbors.
struct Alarm {
    std::string alarm_id;  // origin:window:sequence, unique per run
    NodeId origin;
    WindowIndex window = 0;
    DetectionResult result;
    std::vector<NodeId> recipients;  // origin plus neighbors(origin), sorted

    bool operator==(const Alarm&) const = default;
};

enum class MessageKind : std::uint8_t { ExistenceQuery, ExistenceAck, UnitProvision, AlarmMsg };

struct UnitProvisionBody {
    std::vector<UnitKind> units;
};

struct AlarmBody {
    Alarm alarm;
    int ttl = 1;   // remaining forwarding budget; 1 = one-hop only
    int hops = 1;  // hops traveled when delivered
};

struct Message {
    MessageKind kind = MessageKind::ExistenceQuery;
    NodeId from;
    NodeId to;
    Tick sent_at = 0;
    std::optional<UnitProvisionBody> units;  // UnitProvision
    std::optional<AlarmBody> alarm;          // AlarmMsg
};

const char* to_string(MessageKind kind) noexcept;
const char* to_string(UnitKind unit) noexcept;

}  // namespace ubinode
