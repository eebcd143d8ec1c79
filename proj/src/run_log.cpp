#include "ubinode/run_log.hpp"

#include <algorithm>
#include <ostream>

#include "json.hpp"

namespace ubinode {

using ordered_json = nlohmann::ordered_json;

const char* to_string(LogType type) noexcept {
    switch (type) {
        case LogType::EventObserved: return "event_observed";
        case LogType::MessageSent: return "message_sent";
        case LogType::MessageDropped: return "message_dropped";
        case LogType::MessageDelivered: return "message_delivered";
        case LogType::Detection: return "detection";
        case LogType::AlarmRaised: return "alarm_raised";
        case LogType::AlarmLogged: return "alarm_logged";
        case LogType::StateChange: return "state_change";
        case LogType::Warning: return "warning";
    }
    return "unknown";
}

RunLog::RunLog(std::vector<NodeId> node_names, CatalogPtr catalog)
    : node_names_(std::move(node_names)), catalog_(std::move(catalog)) {
    std::sort(node_names_.begin(), node_names_.end());
}

std::int32_t RunLog::node_index(const NodeId& node) const {
    auto it = std::lower_bound(node_names_.begin(), node_names_.end(), node);
    if (it == node_names_.end() || *it != node) {
        throw Error("run log has no node '" + node + "'");
    }
    return static_cast<std::int32_t>(it - node_names_.begin());
}

std::string RunLog::to_jsonl_line(const LogEntry& e) const {
    ordered_json j;
    j["tick"] = e.tick;
    j["type"] = to_string(e.type);

    auto name_of = [this](std::int32_t idx) { return node_names_.at(idx); };
    auto feature_names = [this](const std::vector<std::int32_t>& indices) {
        std::vector<std::string> names;
        names.reserve(indices.size());
        for (auto idx : indices) {
            names.push_back(catalog_->name_at(static_cast<std::size_t>(idx)));
        }
        return names;
    };
    auto node_names_of = [&](const std::vector<std::int32_t>& indices) {
        std::vector<std::string> names;
        names.reserve(indices.size());
        for (auto idx : indices) {
            names.push_back(name_of(idx));
        }
        return names;
    };

    switch (e.type) {
        case LogType::EventObserved:
            j["node"] = name_of(e.node);
            j["window"] = e.window;
            j["feature"] = e.feature >= 0 ? catalog_->name_at(e.feature)
                                          : (e.detail ? e.detail->text : std::string{});
            j["label"] = to_string(e.label);
            j["outcome"] = e.has(LogEntry::kDroppedInactive) ? "dropped_inactive"
                           : e.has(LogEntry::kUnknownFeature) ? "unknown_feature"
                                                              : "recorded";
            break;
        case LogType::MessageSent:
        case LogType::MessageDropped:
        case LogType::MessageDelivered:
            j["kind"] = to_string(e.msg_kind);
            j["from"] = name_of(e.peer);
            j["to"] = name_of(e.node);
            if (e.msg_kind == MessageKind::AlarmMsg) {
                if (e.detail && !e.detail->alarm_id.empty()) {
                    j["alarm_id"] = e.detail->alarm_id;
                }
                if (e.type == LogType::MessageDelivered) {
                    j["hops"] = e.hops;
                }
            }
            break;
        case LogType::Detection:
            j["node"] = name_of(e.node);
            j["window"] = e.window;
            j["mode"] = to_string(e.mode);
            j["threshold"] = e.detail ? e.detail->threshold : 0;
            j["distance"] = e.detail ? e.detail->distance : 0;
            j["score"] = e.detail ? e.detail->score : 0;
            j["verdict"] = to_string(e.verdict);
            j["deviating"] = e.detail ? feature_names(e.detail->deviating)
                                      : std::vector<std::string>{};
            j["violating"] = e.detail ? feature_names(e.detail->violating)
                                      : std::vector<std::string>{};
            break;
        case LogType::AlarmRaised:
            j["alarm_id"] = e.detail ? e.detail->alarm_id : std::string{};
            j["origin"] = name_of(e.node);
            j["window"] = e.window;
            j["recipients"] = e.detail ? node_names_of(e.detail->recipients)
                                       : std::vector<std::string>{};
            j["violations"] = e.detail ? feature_names(e.detail->violating)
                                       : std::vector<std::string>{};
            break;
        case LogType::AlarmLogged:
            j["node"] = name_of(e.node);
            j["alarm_id"] = e.detail ? e.detail->alarm_id : std::string{};
            j["via"] = e.has(LogEntry::kLocalDelivery) ? "local" : "network";
            j["hops"] = e.hops;
            j["duplicate"] = e.has(LogEntry::kDuplicate);
            break;
        case LogType::StateChange:
            j["node"] = name_of(e.node);
            j["state"] = e.detail ? e.detail->text : std::string{};
            break;
        case LogType::Warning:
            if (e.node >= 0) {
                j["node"] = name_of(e.node);
            }
            j["text"] = e.detail ? e.detail->text : std::string{};
            break;
    }
    return j.dump();
}

void RunLog::write_jsonl(std::ostream& out) const {
    for (const auto& entry : entries_) {
        out << to_jsonl_line(entry) << '\n';
    }
}

}  // namespace ubinode
