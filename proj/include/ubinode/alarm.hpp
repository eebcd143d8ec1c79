#pragma once

#include <utility>
#include <vector>

#include "ubinode/agent.hpp"
#include "ubinode/messages.hpp"

namespace ubinode {

// Builds the alarm for an anomalous result, delivers it to the origin's
// own log directly (local delivery never touches the network) and returns
// one AlarmMsg per one-hop neighbor. Throws ContractError for a Normal
// verdict.
std::pair<Alarm, std::vector<Message>> raise_alarm(NodeAgent& agent,
                                                   const DetectionResult& result, Tick now);

struct AcceptOutcome {
    bool newly_logged = false;
    std::vector<Message> forwards;  // empty unless the message carries ttl > 1
};

// Records a delivered alarm exactly once per alarm_id; duplicates are
// dropped. With the default ttl of 1 nothing is ever re-forwarded.
AcceptOutcome accept_alarm(NodeAgent& agent, const Message& msg, Tick now);

}  // namespace ubinode
