#include "ubinode/fixtures.hpp"

#include "ubinode/errors.hpp"

namespace ubinode::fixtures {

namespace {

constexpr const char* k_marc_smart_office = R"doc({
  "spec_version": 1,
  "catalog": ["print", "consult", "email", "update", "share", "scan"],
  "nodes": [
    {"id": "marc", "permitted": ["print", "consult", "email"], "restricted": ["update", "share", "scan"]},
    {"id": "lina", "permitted": ["consult", "email"], "restricted": ["print", "update", "share", "scan"]},
    {"id": "omar", "permitted": ["print", "update"], "restricted": ["consult", "email", "share", "scan"]},
    {"id": "sara", "permitted": ["share"], "restricted": ["print", "consult", "email", "update", "scan"]}
  ],
  "edges": [["marc", "lina"], ["marc", "omar"], ["marc", "sara"]],
  "trace": [
    {"window": 0, "node": "marc", "feature": "print"},
    {"window": 0, "node": "marc", "feature": "consult"},
    {"window": 1, "node": "marc", "feature": "print"},
    {"window": 1, "node": "marc", "feature": "consult"},
    {"window": 1, "node": "marc", "feature": "email"},
    {"window": 2, "node": "marc", "feature": "print"},
    {"window": 3, "node": "marc", "feature": "consult"},
    {"window": 3, "node": "marc", "feature": "email"},
    {"window": 4, "node": "marc", "feature": "print"},
    {"window": 4, "node": "marc", "feature": "email"},
    {"window": 5, "node": "marc", "feature": "print"},
    {"window": 5, "node": "marc", "feature": "consult"},
    {"window": 5, "node": "marc", "feature": "email"},
    {"window": 6, "node": "marc", "feature": "email"},
    {"window": 7, "node": "marc", "feature": "print"},
    {"window": 7, "node": "marc", "feature": "consult"},
    {"window": 7, "node": "marc", "feature": "email"},
    {"window": 8, "node": "marc", "feature": "consult"},
    {"window": 9, "node": "marc", "feature": "print"},
    {"window": 9, "node": "marc", "feature": "consult"},
    {"window": 9, "node": "marc", "feature": "email"},
    {"window": 0, "node": "lina", "feature": "consult"},
    {"window": 0, "node": "lina", "feature": "email"},
    {"window": 1, "node": "lina", "feature": "consult"},
    {"window": 2, "node": "lina", "feature": "consult"},
    {"window": 2, "node": "lina", "feature": "email"},
    {"window": 3, "node": "lina", "feature": "consult"},
    {"window": 4, "node": "lina", "feature": "consult"},
    {"window": 4, "node": "lina", "feature": "email"},
    {"window": 5, "node": "lina", "feature": "consult"},
    {"window": 6, "node": "lina", "feature": "consult"},
    {"window": 6, "node": "lina", "feature": "email"},
    {"window": 7, "node": "lina", "feature": "consult"},
    {"window": 8, "node": "lina", "feature": "consult"},
    {"window": 8, "node": "lina", "feature": "email"},
    {"window": 9, "node": "lina", "feature": "consult"},
    {"window": 0, "node": "omar", "feature": "print"},
    {"window": 0, "node": "omar", "feature": "update"},
    {"window": 1, "node": "omar", "feature": "print"},
    {"window": 1, "node": "omar", "feature": "update"},
    {"window": 2, "node": "omar", "feature": "print"},
    {"window": 2, "node": "omar", "feature": "update"},
    {"window": 3, "node": "omar", "feature": "print"},
    {"window": 3, "node": "omar", "feature": "update"},
    {"window": 4, "node": "omar", "feature": "print"},
    {"window": 4, "node": "omar", "feature": "update"},
    {"window": 5, "node": "omar", "feature": "print"},
    {"window": 5, "node": "omar", "feature": "update"},
    {"window": 6, "node": "omar", "feature": "print"},
    {"window": 6, "node": "omar", "feature": "update"},
    {"window": 7, "node": "omar", "feature": "print"},
    {"window": 7, "node": "omar", "feature": "update"},
    {"window": 8, "node": "omar", "feature": "print"},
    {"window": 8, "node": "omar", "feature": "update"},
    {"window": 9, "node": "omar", "feature": "print"},
    {"window": 9, "node": "omar", "feature": "update"},
    {"window": 0, "node": "sara", "feature": "share"},
    {"window": 1, "node": "sara", "feature": "share"},
    {"window": 2, "node": "sara", "feature": "share"},
    {"window": 3, "node": "sara", "feature": "share"},
    {"window": 4, "node": "sara", "feature": "share"}
  ],
  "intruders": [
    {"node": "marc", "window": 5, "features": ["scan", "update"]}
  ],
  "detection": {"mode": "violation_only", "threshold": 0},
  "sim": {
    "seed": 42,
    "window_length": 10,
    "total_windows": 10,
    "delay": 1,
    "join_retry_timeout": 4,
    "alarm_ttl": 1,
    "rng": "splitmix64",
    "delivery": {"lossless": true, "loss_probability": 0.0}
  }
}
)doc";

constexpr const char* k_join_provisioning = R"doc({
  "spec_version": 1,
  "catalog": ["print", "consult", "email", "update", "share", "scan"],
  "nodes": [
    {"id": "marc", "permitted": ["print", "consult", "email"], "restricted": ["update", "share", "scan"]},
    {"id": "lina", "permitted": ["consult", "email"], "restricted": ["print", "update", "share", "scan"]},
    {"id": "omar", "permitted": ["print", "update"], "restricted": ["consult", "email", "share", "scan"]},
    {"id": "sara", "permitted": ["share"], "restricted": ["print", "consult", "email", "update", "scan"]},
    {"id": "dave", "permitted": ["email"], "restricted": ["print", "consult", "update", "share", "scan"]}
  ],
  "edges": [["marc", "lina"], ["marc", "omar"], ["marc", "sara"], ["dave", "lina"]],
  "joiners": [
    {"node": "dave", "join_tick": 0}
  ],
  "trace": [
    {"window": 0, "node": "dave", "feature": "email"},
    {"window": 1, "node": "dave", "feature": "email"},
    {"window": 2, "node": "dave", "feature": "email"},
    {"window": 3, "node": "dave", "feature": "email"},
    {"window": 4, "node": "dave", "feature": "email"},
    {"window": 5, "node": "dave", "feature": "email"},
    {"window": 6, "node": "dave", "feature": "email"},
    {"window": 7, "node": "dave", "feature": "email"},
    {"window": 8, "node": "dave", "feature": "email"},
    {"window": 9, "node": "dave", "feature": "email"},
    {"window": 0, "node": "marc", "feature": "print"},
    {"window": 1, "node": "marc", "feature": "print"},
    {"window": 2, "node": "marc", "feature": "print"},
    {"window": 3, "node": "marc", "feature": "print"},
    {"window": 4, "node": "marc", "feature": "print"},
    {"window": 5, "node": "marc", "feature": "print"},
    {"window": 6, "node": "marc", "feature": "print"},
    {"window": 7, "node": "marc", "feature": "print"},
    {"window": 8, "node": "marc", "feature": "print"},
    {"window": 9, "node": "marc", "feature": "print"},
    {"window": 0, "node": "lina", "feature": "consult"},
    {"window": 1, "node": "lina", "feature": "consult"},
    {"window": 2, "node": "lina", "feature": "consult"},
    {"window": 3, "node": "lina", "feature": "consult"},
    {"window": 4, "node": "lina", "feature": "consult"},
    {"window": 5, "node": "lina", "feature": "consult"},
    {"window": 6, "node": "lina", "feature": "consult"},
    {"window": 7, "node": "lina", "feature": "consult"},
    {"window": 8, "node": "lina", "feature": "consult"},
    {"window": 9, "node": "lina", "feature": "consult"},
    {"window": 0, "node": "omar", "feature": "update"},
    {"window": 1, "node": "omar", "feature": "update"},
    {"window": 2, "node": "omar", "feature": "update"},
    {"window": 3, "node": "omar", "feature": "update"},
    {"window": 4, "node": "omar", "feature": "update"},
    {"window": 5, "node": "omar", "feature": "update"},
    {"window": 6, "node": "omar", "feature": "update"},
    {"window": 7, "node": "omar", "feature": "update"},
    {"window": 8, "node": "omar", "feature": "update"},
    {"window": 9, "node": "omar", "feature": "update"},
    {"window": 0, "node": "sara", "feature": "share"},
    {"window": 1, "node": "sara", "feature": "share"},
    {"window": 2, "node": "sara", "feature": "share"},
    {"window": 3, "node": "sara", "feature": "share"},
    {"window": 4, "node": "sara", "feature": "share"},
    {"window": 5, "node": "sara", "feature": "share"},
    {"window": 6, "node": "sara", "feature": "share"},
    {"window": 7, "node": "sara", "feature": "share"},
    {"window": 8, "node": "sara", "feature": "share"},
    {"window": 9, "node": "sara", "feature": "share"}
  ],
  "intruders": [
    {"node": "dave", "window": 6, "features": ["share"]}
  ],
  "detection": {"mode": "violation_only", "threshold": 0},
  "sim": {
    "seed": 42,
    "window_length": 10,
    "total_windows": 10,
    "delay": 1,
    "join_retry_timeout": 4,
    "alarm_ttl": 1,
    "rng": "splitmix64",
    "delivery": {"lossless": true, "loss_probability": 0.0}
  }
}
)doc";

constexpr const char* k_lossy_ring = R"doc({
  "spec_version": 1,
  "catalog": ["read", "write", "exec", "admin"],
  "nodes": [
    {"id": "r0", "permitted": ["read", "write"], "restricted": ["exec", "admin"]},
    {"id": "r1", "permitted": ["read", "exec"], "restricted": ["write", "admin"]},
    {"id": "r2", "permitted": ["read", "write"], "restricted": ["exec", "admin"]},
    {"id": "r3", "permitted": ["read", "exec"], "restricted": ["write", "admin"]},
    {"id": "r4", "permitted": ["read", "write"], "restricted": ["exec", "admin"]},
    {"id": "r5", "permitted": ["read", "exec"], "restricted": ["write", "admin"]}
  ],
  "edges": [
    ["r0", "r1"], ["r1", "r2"], ["r2", "r3"], ["r3", "r4"], ["r4", "r5"], ["r5", "r0"]
  ],
  "trace": [
    {"window": 0, "node": "r0", "feature": "read"},
    {"window": 1, "node": "r0", "feature": "read"},
    {"window": 2, "node": "r0", "feature": "read"},
    {"window": 3, "node": "r0", "feature": "read"},
    {"window": 4, "node": "r0", "feature": "read"},
    {"window": 5, "node": "r0", "feature": "read"},
    {"window": 6, "node": "r0", "feature": "read"},
    {"window": 7, "node": "r0", "feature": "read"},
    {"window": 8, "node": "r0", "feature": "read"},
    {"window": 9, "node": "r0", "feature": "read"},
    {"window": 0, "node": "r1", "feature": "read"},
    {"window": 1, "node": "r1", "feature": "read"},
    {"window": 2, "node": "r1", "feature": "read"},
    {"window": 3, "node": "r1", "feature": "read"},
    {"window": 4, "node": "r1", "feature": "read"},
    {"window": 5, "node": "r1", "feature": "read"},
    {"window": 6, "node": "r1", "feature": "read"},
    {"window": 7, "node": "r1", "feature": "read"},
    {"window": 8, "node": "r1", "feature": "read"},
    {"window": 9, "node": "r1", "feature": "read"},
    {"window": 0, "node": "r2", "feature": "read"},
    {"window": 1, "node": "r2", "feature": "read"},
    {"window": 2, "node": "r2", "feature": "read"},
    {"window": 3, "node": "r2", "feature": "read"},
    {"window": 4, "node": "r2", "feature": "read"},
    {"window": 5, "node": "r2", "feature": "read"},
    {"window": 6, "node": "r2", "feature": "read"},
    {"window": 7, "node": "r2", "feature": "read"},
    {"window": 8, "node": "r2", "feature": "read"},
    {"window": 9, "node": "r2", "feature": "read"},
    {"window": 0, "node": "r3", "feature": "read"},
    {"window": 1, "node": "r3", "feature": "read"},
    {"window": 2, "node": "r3", "feature": "read"},
    {"window": 3, "node": "r3", "feature": "read"},
    {"window": 4, "node": "r3", "feature": "read"},
    {"window": 5, "node": "r3", "feature": "read"},
    {"window": 6, "node": "r3", "feature": "read"},
    {"window": 7, "node": "r3", "feature": "read"},
    {"window": 8, "node": "r3", "feature": "read"},
    {"window": 9, "node": "r3", "feature": "read"},
    {"window": 0, "node": "r4", "feature": "read"},
    {"window": 1, "node": "r4", "feature": "read"},
    {"window": 2, "node": "r4", "feature": "read"},
    {"window": 3, "node": "r4", "feature": "read"},
    {"window": 4, "node": "r4", "feature": "read"},
    {"window": 5, "node": "r4", "feature": "read"},
    {"window": 6, "node": "r4", "feature": "read"},
    {"window": 7, "node": "r4", "feature": "read"},
    {"window": 8, "node": "r4", "feature": "read"},
    {"window": 9, "node": "r4", "feature": "read"},
    {"window": 0, "node": "r5", "feature": "read"},
    {"window": 1, "node": "r5", "feature": "read"},
    {"window": 2, "node": "r5", "feature": "read"},
    {"window": 3, "node": "r5", "feature": "read"},
    {"window": 4, "node": "r5", "feature": "read"},
    {"window": 5, "node": "r5", "feature": "read"},
    {"window": 6, "node": "r5", "feature": "read"},
    {"window": 7, "node": "r5", "feature": "read"},
    {"window": 8, "node": "r5", "feature": "read"},
    {"window": 9, "node": "r5", "feature": "read"}
  ],
  "intruders": [
    {"node": "r2", "window": 3, "features": ["admin"]},
    {"node": "r5", "window": 7, "features": ["write", "admin"]}
  ],
  "detection": {"mode": "violation_only", "threshold": 0},
  "sim": {
    "seed": 7,
    "window_length": 5,
    "total_windows": 10,
    "delay": 2,
    "join_retry_timeout": 4,
    "alarm_ttl": 1,
    "rng": "splitmix64",
    "delivery": {"lossless": false, "loss_probability": 0.35}
  }
}
)doc";

constexpr const char* k_unknown_actions = R"doc({
  "spec_version": 1,
  "catalog": ["login", "backup"],
  "nodes": [
    {"id": "anna", "permitted": ["login"], "restricted": ["backup"]},
    {"id": "beto", "permitted": ["login", "backup"], "restricted": []}
  ],
  "edges": [["anna", "beto"]],
  "trace": [
    {"window": 0, "node": "anna", "feature": "login"},
    {"window": 0, "node": "anna", "feature": "fax"},
    {"window": 1, "node": "anna", "feature": "login"},
    {"window": 0, "node": "beto", "feature": "login"},
    {"window": 1, "node": "beto", "feature": "backup"}
  ],
  "detection": {"mode": "violation_only", "threshold": 0},
  "sim": {
    "seed": 1,
    "window_length": 2,
    "total_windows": 2,
    "delay": 1,
    "join_retry_timeout": 4,
    "alarm_ttl": 1,
    "rng": "splitmix64",
    "delivery": {"lossless": true, "loss_probability": 0.0}
  }
}
)doc";

}  // namespace

const std::vector<BundledScenario>& bundled_scenarios() {
    static const std::vector<BundledScenario> all = {
        {"marc_smart_office", k_marc_smart_office},
        {"join_provisioning", k_join_provisioning},
        {"lossy_ring", k_lossy_ring},
        {"unknown_actions", k_unknown_actions},
    };
    return all;
}

const BundledScenario& bundled(const std::string& name) {
    for (const auto& scenario : bundled_scenarios()) {
        if (scenario.name == name) {
            return scenario;
        }
    }
    throw ConfigError("no bundled scenario named '" + name + "'");
}

}  // namespace ubinode::fixtures
