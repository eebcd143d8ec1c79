#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "ubinode/detection.hpp"
#include "ubinode/messages.hpp"
#include "ubinode/model.hpp"
#include "ubinode/types.hpp"

namespace ubinode {

enum class LogType : std::uint8_t {
    EventObserved,
    MessageSent,
    MessageDropped,
    MessageDelivered,
    Detection,
    AlarmRaised,
    AlarmLogged,
    StateChange,
    Warning,
};

const char* to_string(LogType type) noexcept;

// Side data for the few entry kinds that need more than the inline fields.
// Event entries (the bulk of a large run) never allocate one.
struct LogDetail {
    std::string text;      // unknown feature name, warning text, state name
    std::string alarm_id;
    std::vector<std::int32_t> deviating;   // catalog indices
    std::vector<std::int32_t> violating;   // catalog indices
    std::vector<std::int32_t> recipients;  // node indices
    std::uint32_t distance = 0;
    std::uint32_t score = 0;
    std::uint32_t threshold = 0;
};

struct LogEntry {
    static constexpr std::uint8_t kUnknownFeature = 1u << 0;
    static constexpr std::uint8_t kDroppedInactive = 1u << 1;
    static constexpr std::uint8_t kDuplicate = 1u << 2;
    static constexpr std::uint8_t kLocalDelivery = 1u << 3;

    Tick tick = 0;
    LogType type = LogType::Warning;
    std::int32_t node = -1;  // subject node (observer, detector, receiver)
    std::int32_t peer = -1;  // message sender
    std::int32_t window = -1;
    std::int32_t feature = -1;  // catalog index; -1 with detail text for unknown
    Label label = Label::Benign;
    Verdict verdict = Verdict::Normal;
    DetectionMode mode = DetectionMode::ViolationOnly;
    MessageKind msg_kind = MessageKind::ExistenceQuery;
    std::int16_t hops = 0;
    std::uint8_t flags = 0;
    std::unique_ptr<LogDetail> detail;

    bool has(std::uint8_t flag) const noexcept { return (flags & flag) != 0; }
};

// Append-only, tick-stamped record of everything a run did. Node and
// feature names are interned against the tables held here; the JSON-lines
// form resolves them back to names.
class RunLog {
public:
    RunLog(std::vector<NodeId> node_names, CatalogPtr catalog);

    void reserve(std::size_t entries) { entries_.reserve(entries); }
    void append(LogEntry entry) { entries_.push_back(std::move(entry)); }

    const std::vector<LogEntry>& entries() const noexcept { return entries_; }
    const std::vector<NodeId>& node_names() const noexcept { return node_names_; }
    const CatalogPtr& catalog() const noexcept { return catalog_; }

    std::int32_t node_index(const NodeId& node) const;
    const NodeId& node_name(std::int32_t index) const { return node_names_.at(index); }

    std::string to_jsonl_line(const LogEntry& entry) const;
    void write_jsonl(std::ostream& out) const;

private:
    std::vector<NodeId> node_names_;  // sorted
    CatalogPtr catalog_;
    std::vector<LogEntry> entries_;
};

}  // namespace ubinode
