#include "ubinode/alarm.hpp"

#include <algorithm>

namespace ubinode {

std::pair<Alarm, std::vector<Message>> raise_alarm(NodeAgent& agent,
                                                   const DetectionResult& result, Tick now) {
    if (result.verdict != Verdict::Anomaly) {
        throw ContractError("raise_alarm called with a Normal verdict for '" + agent.id() + "'");
    }
    if (agent.state() != AgentState::Active) {
        throw StateError("raise_alarm requires an Active agent; '" + agent.id() + "' is " +
                         to_string(agent.state()));
    }

    Alarm alarm;
    alarm.origin = agent.id();
    alarm.window = result.window;
    alarm.alarm_id = agent.id() + ":" + std::to_string(result.window) + ":" +
                     std::to_string(agent.take_alarm_sequence());
    alarm.result = result;
    alarm.recipients.reserve(agent.neighbors().size() + 1);
    alarm.recipients.push_back(agent.id());
    alarm.recipients.insert(alarm.recipients.end(), agent.neighbors().begin(),
                            agent.neighbors().end());
    std::sort(alarm.recipients.begin(), alarm.recipients.end());

    agent.record_alarm(alarm);  // local delivery, never on the network

    std::vector<Message> messages;
    messages.reserve(agent.neighbors().size());
    for (const auto& neighbor : agent.neighbors()) {
        messages.push_back(Message{MessageKind::AlarmMsg, agent.id(), neighbor, now,
                                   std::nullopt, AlarmBody{alarm, agent.alarm_ttl(), 1}});
    }
    return {std::move(alarm), std::move(messages)};
}

AcceptOutcome accept_alarm(NodeAgent& agent, const Message& msg, Tick now) {
    if (msg.kind != MessageKind::AlarmMsg || !msg.alarm) {
        throw ContractError("accept_alarm needs an AlarmMsg with a payload");
    }
    if (msg.to != agent.id()) {
        throw ContractError("alarm addressed to '" + msg.to + "' accepted by '" + agent.id() +
                            "'");
    }

    AcceptOutcome outcome;
    outcome.newly_logged = agent.record_alarm(msg.alarm->alarm);
    if (outcome.newly_logged && msg.alarm->ttl > 1) {
        for (const auto& neighbor : agent.neighbors()) {
            if (neighbor == msg.from) {
                continue;
            }
            outcome.forwards.push_back(
                Message{MessageKind::AlarmMsg, agent.id(), neighbor, now, std::nullopt,
                        AlarmBody{msg.alarm->alarm, msg.alarm->ttl - 1, msg.alarm->hops + 1}});
        }
    }
    return outcome;
}

}  // namespace ubinode
