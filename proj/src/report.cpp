#include "ubinode/report.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace ubinode {

namespace {

using json = nlohmann::ordered_json;

// Shared counter core for both metric sources (in-memory log, exported
// JSONL). Keys are (window, node) so each node's window sequence is judged
// on its own.
struct MetricsAccumulator {
    std::set<std::pair<std::int64_t, std::string>> malicious;
    std::set<std::pair<std::int64_t, std::string>> anomalies;
    std::map<std::string, std::set<std::int64_t>> alarms_by_origin;
    std::uint64_t unknown = 0;

    void event_observed(std::int64_t window, std::string node, bool is_malicious,
                        bool unknown_feature) {
        if (is_malicious) {
            malicious.emplace(window, std::move(node));
        }
        if (unknown_feature) {
            ++unknown;
        }
    }

    void detection(std::int64_t window, std::string node, bool anomaly) {
        if (anomaly) {
            anomalies.emplace(window, std::move(node));
        }
    }

    void alarm_raised(std::int64_t window, std::string origin) {
        alarms_by_origin[std::move(origin)].insert(window);
    }

    RunMetrics finish() const {
        RunMetrics metrics;
        metrics.unknown_action_tally = unknown;
        std::int64_t hits = 0;
        for (const auto& node_window : malicious) {
            if (anomalies.count(node_window) > 0) {
                ++hits;
            }
        }
        metrics.true_detections = hits;
        metrics.missed_malicious_windows = static_cast<std::int64_t>(malicious.size()) - hits;
        std::int64_t false_positives = 0;
        for (const auto& node_window : anomalies) {
            if (malicious.count(node_window) == 0) {
                ++false_positives;
            }
        }
        metrics.false_positives = false_positives;
        if (!malicious.empty()) {
            const auto& [first_window, first_node] = *malicious.begin();
            auto it = alarms_by_origin.find(first_node);
            if (it != alarms_by_origin.end()) {
                auto alarm_window = it->second.lower_bound(first_window);
                if (alarm_window != it->second.end()) {
                    metrics.detection_latency_windows = *alarm_window - first_window;
                }
            }
        }
        return metrics;
    }
};

}  // namespace

RunMetrics compute_metrics(const RunLog& log) {
    MetricsAccumulator acc;
    for (const auto& e : log.entries()) {
        switch (e.type) {
            case LogType::EventObserved:
                acc.event_observed(e.window, log.node_name(e.node),
                                   e.label == Label::Malicious,
                                   e.has(LogEntry::kUnknownFeature));
                break;
            case LogType::Detection:
                acc.detection(e.window, log.node_name(e.node), e.verdict == Verdict::Anomaly);
                break;
            case LogType::AlarmRaised:
                acc.alarm_raised(e.window, log.node_name(e.node));
                break;
            default:
                break;
        }
    }
    return acc.finish();
}

RunMetrics compute_metrics_from_jsonl(std::istream& in) {
    MetricsAccumulator acc;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        try {
            const json entry = json::parse(line);
            const std::string type = entry.at("type").get<std::string>();
            if (type == "event_observed") {
                acc.event_observed(entry.at("window").get<std::int64_t>(),
                                   entry.at("node").get<std::string>(),
                                   entry.at("label").get<std::string>() == "malicious",
                                   entry.at("outcome").get<std::string>() == "unknown_feature");
            } else if (type == "detection") {
                acc.detection(entry.at("window").get<std::int64_t>(),
                              entry.at("node").get<std::string>(),
                              entry.at("verdict").get<std::string>() == "anomaly");
            } else if (type == "alarm_raised") {
                acc.alarm_raised(entry.at("window").get<std::int64_t>(),
                                 entry.at("origin").get<std::string>());
            }
        } catch (const json::exception& e) {
            throw ReportError("log line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return acc.finish();
}

RunReport build_report(const Scenario& scenario, const SimOutput& output) {
    RunReport report;
    report.digest = scenario.digest.empty() ? scenario_digest(scenario) : scenario.digest;
    report.spec_version = scenario.spec_version;
    report.seed = scenario.config.seed;
    report.mode = scenario.policy.mode;
    report.threshold = scenario.policy.threshold;
    report.rng_algorithm = scenario.config.rng_algorithm;

    for (const auto& node : scenario.topology.nodes()) {
        NodeSummary summary;
        summary.node = node;
        const auto& audit = output.audit.at(node);
        summary.windows_evaluated = static_cast<std::int64_t>(audit.size());
        summary.anomalies = std::count_if(audit.begin(), audit.end(), [](const auto& r) {
            return r.verdict == Verdict::Anomaly;
        });
        summary.alarms_raised =
            std::count_if(output.alarms.begin(), output.alarms.end(),
                          [&](const Alarm& a) { return a.origin == node; });
        summary.alarms_logged =
            static_cast<std::int64_t>(output.alarm_logs.at(node).size());
        summary.unknown_actions = output.unknown_actions.at(node);
        report.nodes.push_back(std::move(summary));
    }

    const auto names = [&](const std::vector<std::size_t>& indices) {
        std::vector<std::string> out;
        out.reserve(indices.size());
        for (auto i : indices) {
            out.push_back(scenario.catalog->name_at(i));
        }
        return out;
    };
    for (const auto& alarm : output.alarms) {
        ReportAlarm view;
        view.alarm_id = alarm.alarm_id;
        view.origin = alarm.origin;
        view.window = alarm.window;
        view.distance = alarm.result.distance;
        view.score = alarm.result.score;
        view.deviating = names(alarm.result.deviating_features);
        view.violating = names(alarm.result.violating_features);
        view.recipients = alarm.recipients;
        report.alarms.push_back(std::move(view));
    }

    report.metrics = compute_metrics(output.log);
    return report;
}

ReportFormat parse_format(const std::string& token) {
    if (token == "json-lines" || token == "jsonl") {
        return ReportFormat::JsonLines;
    }
    if (token == "csv") {
        return ReportFormat::Csv;
    }
    if (token == "human-summary" || token == "summary" || token == "human") {
        return ReportFormat::HumanSummary;
    }
    throw ReportError("unknown report format '" + token +
                      "' (expected json-lines, csv, or human-summary)");
}

namespace {

void write_json_lines(const RunReport& r, std::ostream& out) {
    json run;
    run["record"] = "run";
    run["digest"] = r.digest;
    run["spec_version"] = r.spec_version;
    run["seed"] = r.seed;
    run["mode"] = to_string(r.mode);
    run["threshold"] = r.threshold;
    run["rng"] = r.rng_algorithm;
    out << run.dump() << '\n';

    for (const auto& n : r.nodes) {
        json node;
        node["record"] = "node";
        node["node"] = n.node;
        node["windows_evaluated"] = n.windows_evaluated;
        node["anomalies"] = n.anomalies;
        node["alarms_raised"] = n.alarms_raised;
        node["alarms_logged"] = n.alarms_logged;
        node["unknown_actions"] = n.unknown_actions;
        out << node.dump() << '\n';
    }

    for (const auto& a : r.alarms) {
        json alarm;
        alarm["record"] = "alarm";
        alarm["alarm_id"] = a.alarm_id;
        alarm["origin"] = a.origin;
        alarm["window"] = a.window;
        alarm["distance"] = a.distance;
        alarm["score"] = a.score;
        alarm["deviating"] = a.deviating;
        alarm["violating"] = a.violating;
        alarm["recipients"] = a.recipients;
        out << alarm.dump() << '\n';
    }

    json metrics;
    metrics["record"] = "metrics";
    metrics["true_detections"] = r.metrics.true_detections;
    metrics["missed_malicious_windows"] = r.metrics.missed_malicious_windows;
    metrics["false_positives"] = r.metrics.false_positives;
    if (r.metrics.detection_latency_windows) {
        metrics["detection_latency_windows"] = *r.metrics.detection_latency_windows;
    } else {
        metrics["detection_latency_windows"] = nullptr;
    }
    metrics["unknown_action_tally"] = r.metrics.unknown_action_tally;
    out << metrics.dump() << '\n';
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_join(const std::vector<std::string>& parts) {
    std::string joined;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) {
            joined += ';';
        }
        joined += parts[i];
    }
    return csv_quote(joined);
}

// One wide table: every row carries all 24 columns, with the cells that do
// not apply to its record type left empty.
constexpr std::size_t kCsvColumns = 24;
constexpr const char* kCsvHeader =
    "record,node,windows_evaluated,anomalies,alarms_raised,alarms_logged,unknown_actions,"
    "alarm_id,origin,window,distance,score,violations,recipients,"
    "true_detections,missed_malicious_windows,false_positives,detection_latency_windows,"
    "unknown_action_tally,digest,seed,mode,threshold,rng";

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) {
            out << ',';
        }
        out << cells[i];
    }
    out << '\n';
}

void write_csv(const RunReport& r, std::ostream& out) {
    out << kCsvHeader << '\n';

    std::vector<std::string> run(kCsvColumns);
    run[0] = csv_quote("run");
    run[19] = csv_quote(r.digest);
    run[20] = std::to_string(r.seed);
    run[21] = csv_quote(to_string(r.mode));
    run[22] = std::to_string(r.threshold);
    run[23] = csv_quote(r.rng_algorithm);
    write_csv_row(out, run);

    for (const auto& n : r.nodes) {
        std::vector<std::string> row(kCsvColumns);
        row[0] = csv_quote("node");
        row[1] = csv_quote(n.node);
        row[2] = std::to_string(n.windows_evaluated);
        row[3] = std::to_string(n.anomalies);
        row[4] = std::to_string(n.alarms_raised);
        row[5] = std::to_string(n.alarms_logged);
        row[6] = std::to_string(n.unknown_actions);
        write_csv_row(out, row);
    }

    for (const auto& a : r.alarms) {
        std::vector<std::string> row(kCsvColumns);
        row[0] = csv_quote("alarm");
        row[7] = csv_quote(a.alarm_id);
        row[8] = csv_quote(a.origin);
        row[9] = std::to_string(a.window);
        row[10] = std::to_string(a.distance);
        row[11] = std::to_string(a.score);
        row[12] = csv_join(a.violating);
        row[13] = csv_join(a.recipients);
        write_csv_row(out, row);
    }

    std::vector<std::string> metrics(kCsvColumns);
    metrics[0] = csv_quote("metrics");
    metrics[14] = std::to_string(r.metrics.true_detections);
    metrics[15] = std::to_string(r.metrics.missed_malicious_windows);
    metrics[16] = std::to_string(r.metrics.false_positives);
    metrics[17] = r.metrics.detection_latency_windows
                      ? std::to_string(*r.metrics.detection_latency_windows)
                      : std::string{};
    metrics[18] = std::to_string(r.metrics.unknown_action_tally);
    write_csv_row(out, metrics);
}

std::string comma_list(const std::vector<std::string>& parts) {
    if (parts.empty()) {
        return "(none)";
    }
    std::string joined;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) {
            joined += ", ";
        }
        joined += parts[i];
    }
    return joined;
}

void write_human_summary(const RunReport& r, std::ostream& out) {
    out << "run " << r.digest << " (document version " << r.spec_version << ")\n";
    out << "seed " << r.seed << ", mode " << to_string(r.mode) << ", threshold "
        << r.threshold << ", rng " << r.rng_algorithm << "\n";
    out << "\nnodes:\n";
    for (const auto& n : r.nodes) {
        out << "  " << n.node << ": windows " << n.windows_evaluated << ", anomalies "
            << n.anomalies << ", alarms raised " << n.alarms_raised << ", alarms logged "
            << n.alarms_logged << ", unknown actions " << n.unknown_actions << "\n";
    }
    out << "\nalarms:\n";
    if (r.alarms.empty()) {
        out << "  (none)\n";
    }
    for (const auto& a : r.alarms) {
        out << "  " << a.alarm_id << ": origin " << a.origin << ", window " << a.window
            << ", score " << a.score << ", violations " << comma_list(a.violating)
            << ", recipients " << comma_list(a.recipients) << "\n";
    }
    out << "\nmetrics:\n";
    out << "  true detections           " << r.metrics.true_detections << "\n";
    out << "  missed malicious windows  " << r.metrics.missed_malicious_windows << "\n";
    out << "  false positives           " << r.metrics.false_positives << "\n";
    out << "  detection latency         "
        << (r.metrics.detection_latency_windows
                ? std::to_string(*r.metrics.detection_latency_windows) + " window(s)"
                : std::string("none"))
        << "\n";
    out << "  unknown actions           " << r.metrics.unknown_action_tally << "\n";
}

}  // namespace

void export_report(const RunReport& report, ReportFormat format, std::ostream& out) {
    switch (format) {
        case ReportFormat::JsonLines:
            write_json_lines(report, out);
            break;
        case ReportFormat::Csv:
            write_csv(report, out);
            break;
        case ReportFormat::HumanSummary:
            write_human_summary(report, out);
            break;
    }
}

void export_report_to_file(const RunReport& report, ReportFormat format,
                           const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ReportError("cannot write report to '" + path + "'");
    }
    export_report(report, format, out);
    out.flush();
    if (!out) {
        throw ReportError("error while writing report to '" + path + "'");
    }
}

}  // namespace ubinode
