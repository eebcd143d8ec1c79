#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>

#include "CLI11.hpp"

#include "ubinode/fixtures.hpp"
#include "ubinode/report.hpp"

namespace {

using namespace ubinode;

constexpr int kExitOk = 0;
constexpr int kExitInvalidScenario = 1;
constexpr int kExitRuntimeFailure = 2;

const char* category_name(ScenarioError::Category category) {
    switch (category) {
        case ScenarioError::Category::Parse:
            return "parse";
        case ScenarioError::Category::UnresolvedReference:
            return "unresolved-reference";
        case ScenarioError::Category::InvariantViolation:
            return "invariant-violation";
    }
    return "unknown";
}

// UBINODE_SEED accepts a decimal unsigned 64-bit value; anything else is a
// hard error rather than a silently ignored override.
bool seed_from_env(std::uint64_t& seed, bool& present, std::string& error) {
    present = false;
    const char* raw = std::getenv("UBINODE_SEED");
    if (raw == nullptr || *raw == '\0') {
        return true;
    }
    const std::string text(raw);
    if (text.find_first_not_of("0123456789") != std::string::npos) {
        error = "UBINODE_SEED must be a decimal unsigned integer, got '" + text + "'";
        return false;
    }
    try {
        std::size_t used = 0;
        seed = std::stoull(text, &used);
        if (used != text.size()) {
            throw std::invalid_argument(text);
        }
    } catch (const std::exception&) {
        error = "UBINODE_SEED out of range: '" + text + "'";
        return false;
    }
    present = true;
    return true;
}

DetectionMode mode_from_token(const std::string& token) {
    if (token == "strict" || token == "strict_literal") {
        return DetectionMode::StrictLiteral;
    }
    return DetectionMode::ViolationOnly;
}

struct RunOptions {
    bool seed_set = false;
    std::uint64_t seed = 0;
    bool mode_set = false;
    std::string mode;
    bool threshold_set = false;
    std::int64_t threshold = 0;
    std::string format = "human-summary";
    std::string out_path;
    std::string log_path;
    std::string engine = "serial";
};

int execute(Scenario scenario, const RunOptions& opt) {
    if (opt.seed_set) {
        scenario.config.seed = opt.seed;
    } else {
        std::uint64_t env_seed = 0;
        bool env_present = false;
        std::string env_error;
        if (!seed_from_env(env_seed, env_present, env_error)) {
            std::cerr << "error: " << env_error << "\n";
            return kExitRuntimeFailure;
        }
        if (env_present) {
            scenario.config.seed = env_seed;
        }
    }
    if (opt.mode_set) {
        scenario.policy.mode = mode_from_token(opt.mode);
    }
    if (opt.threshold_set) {
        if (opt.threshold < 0 || opt.threshold > std::numeric_limits<std::uint32_t>::max()) {
            std::cerr << "error: --threshold must be in [0, 2^32)\n";
            return kExitRuntimeFailure;
        }
        scenario.policy.threshold = static_cast<std::uint32_t>(opt.threshold);
    }

    const ReportFormat format = parse_format(opt.format);
    SweepEngine engine = SweepEngine::Serial;
    if (opt.engine == "openmp") {
        engine = SweepEngine::OpenMp;
        if (!openmp_available()) {
            std::cerr << "note: this build has no OpenMP support, sweeping serially\n";
        }
    }

    const SimOutput output = run_scenario(scenario, engine);
    const RunReport report = build_report(scenario, output);

    if (!opt.log_path.empty()) {
        std::ofstream log_file(opt.log_path, std::ios::binary);
        if (!log_file) {
            throw ReportError("cannot write run log to '" + opt.log_path + "'");
        }
        output.log.write_jsonl(log_file);
        log_file.flush();
        if (!log_file) {
            throw ReportError("error while writing run log to '" + opt.log_path + "'");
        }
    }

    if (opt.out_path.empty()) {
        export_report(report, format, std::cout);
    } else {
        export_report_to_file(report, format, opt.out_path);
    }
    return kExitOk;
}

void add_run_flags(CLI::App* cmd, RunOptions& opt, bool with_overrides) {
    if (with_overrides) {
        cmd->add_option("--seed", opt.seed, "Override the scenario seed")
            ->each([&opt](const std::string&) { opt.seed_set = true; });
        cmd->add_option("--mode", opt.mode, "Detection mode: strict or violation")
            ->check(CLI::IsMember({"strict", "violation", "strict_literal", "violation_only"}))
            ->each([&opt](const std::string&) { opt.mode_set = true; });
        cmd->add_option("--threshold", opt.threshold,
                        "Alarm threshold: anomaly when score exceeds it")
            ->each([&opt](const std::string&) { opt.threshold_set = true; });
    }
    cmd->add_option("--format", opt.format,
                    "Report format: json-lines, csv, or human-summary")
        ->check(CLI::IsMember({"json-lines", "jsonl", "csv", "human-summary", "summary",
                               "human"}));
    cmd->add_option("--out", opt.out_path, "Write the report here instead of stdout");
    cmd->add_option("--log", opt.log_path, "Also write the full run log (JSONL) here");
    cmd->add_option("--engine", opt.engine, "Detection sweep engine")
        ->check(CLI::IsMember({"serial", "openmp"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Per-node anomaly detection simulator"};
    app.require_subcommand(1);

    std::string validate_path;
    auto* validate_cmd =
        app.add_subcommand("validate", "Check a scenario file and print its digest");
    validate_cmd->add_option("scenario", validate_path, "Scenario JSON file")->required();

    RunOptions run_opt;
    std::string run_path;
    auto* run_cmd = app.add_subcommand("run", "Simulate a scenario and report the outcome");
    run_cmd->add_option("scenario", run_path, "Scenario JSON file")->required();
    add_run_flags(run_cmd, run_opt, true);

    RunOptions demo_opt;
    auto* demo_cmd = app.add_subcommand("demo", "Run the bundled smart-office scenario");
    add_run_flags(demo_cmd, demo_opt, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitRuntimeFailure;
    }

    try {
        if (validate_cmd->parsed()) {
            const Scenario scenario = load_scenario(validate_path);
            std::cout << "ok " << scenario.digest << ": "
                      << scenario.topology.nodes().size() << " nodes, "
                      << scenario.catalog->size() << " features, "
                      << scenario.config.total_windows << " windows\n";
            return kExitOk;
        }
        if (run_cmd->parsed()) {
            return execute(load_scenario(run_path), run_opt);
        }
        if (demo_cmd->parsed()) {
            const auto& bundled = fixtures::bundled("marc_smart_office");
            return execute(parse_scenario(bundled.text, "<bundled " + bundled.name + ">"),
                           demo_opt);
        }
    } catch (const ScenarioError& e) {
        std::cerr << "invalid scenario (" << category_name(e.category()) << "): " << e.what()
                  << "\n";
        return kExitInvalidScenario;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntimeFailure;
    }
    return kExitRuntimeFailure;
}
