#pragma once

#include <string>
#include <vector>

namespace ubinode::fixtures {

// Scenario documents compiled into the library so `demo` and the tests run
// without touching the filesystem. Each mirrors scenarios/<name>.json in the
// source tree byte for byte; a repo test keeps the two in sync.
struct BundledScenario {
    std::string name;
    std::string text;
};

const std::vector<BundledScenario>& bundled_scenarios();

// Throws ConfigError for a name that is not bundled.
const BundledScenario& bundled(const std::string& name);

}  // namespace ubinode::fixtures
