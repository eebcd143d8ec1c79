#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ubinode/scenario.hpp"

namespace ubinode {

// Ground truth for these counters is the event labels recorded in the run
// log, which detection itself never sees. A node-window is malicious when at
// least one malicious event targeted that node in that window, whatever the
// delivery outcome was.
struct RunMetrics {
    std::int64_t true_detections = 0;
    std::int64_t missed_malicious_windows = 0;
    std::int64_t false_positives = 0;
    // Windows between the first malicious node-window and that node's first
    // alarm at or after it; empty when no such alarm (or no intrusion).
    std::optional<std::int64_t> detection_latency_windows;
    std::uint64_t unknown_action_tally = 0;

    bool operator==(const RunMetrics&) const = default;
};

RunMetrics compute_metrics(const RunLog& log);

// Recomputes the same counters from an exported JSONL log stream. Feeding
// back a log written by RunLog::write_jsonl reproduces compute_metrics
// exactly. Malformed lines raise ReportError.
RunMetrics compute_metrics_from_jsonl(std::istream& in);

struct NodeSummary {
    NodeId node;
    std::int64_t windows_evaluated = 0;
    std::int64_t anomalies = 0;
    std::int64_t alarms_raised = 0;
    std::int64_t alarms_logged = 0;
    std::uint64_t unknown_actions = 0;

    bool operator==(const NodeSummary&) const = default;
};

// Alarm with feature indices resolved to names, ready for export.
struct ReportAlarm {
    std::string alarm_id;
    NodeId origin;
    WindowIndex window = 0;
    std::uint32_t distance = 0;
    std::uint32_t score = 0;
    std::vector<std::string> deviating;
    std::vector<std::string> violating;
    std::vector<NodeId> recipients;

    bool operator==(const ReportAlarm&) const = default;
};

struct RunReport {
    std::string digest;
    int spec_version = 1;
    std::uint64_t seed = 0;
    DetectionMode mode = DetectionMode::ViolationOnly;
    std::uint32_t threshold = 0;
    std::string rng_algorithm;
    std::vector<NodeSummary> nodes;  // ascending node id
    std::vector<ReportAlarm> alarms;  // raise order
    RunMetrics metrics;

    bool operator==(const RunReport&) const = default;
};

RunReport build_report(const Scenario& scenario, const SimOutput& output);

enum class ReportFormat { JsonLines, Csv, HumanSummary };

// Accepts "json-lines" (alias "jsonl"), "csv", and "human-summary" (aliases
// "summary", "human"). Anything else raises ReportError.
ReportFormat parse_format(const std::string& token);

// Exports are byte-stable: the same report and format always produce the
// same bytes.
void export_report(const RunReport& report, ReportFormat format, std::ostream& out);
void export_report_to_file(const RunReport& report, ReportFormat format,
                           const std::string& path);

}  // namespace ubinode
