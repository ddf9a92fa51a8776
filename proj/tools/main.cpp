// Command-line front end: resample / metrics / har / regress / simulate /
// pipeline. Exit codes: 0 success, 1 usage or config error, 2 data error.

#include "intravol/errors.hpp"
#include "intravol/pipeline.hpp"
#include "intravol/version.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <map>
#include <string>

namespace {

using intravol::PipelineConfig;

/// Collects --key value overrides; flags win over the --config file.
struct CliOverrides {
    std::map<std::string, std::string> entries;
    std::string config_file;
};

void add_option(CLI::App* cmd, CliOverrides& over, const std::string& key,
                const std::string& description) {
    cmd->add_option_function<std::string>(
           "--" + key,
           [&over, key](const std::string& value) { over.entries[key] = value; },
           description)
        ->type_name("TEXT");
}

void add_common_options(CLI::App* cmd, CliOverrides& over) {
    cmd->add_option("--config", over.config_file, "key = value config file");
    add_option(cmd, over, "input", "input file path");
    add_option(cmd, over, "input_kind", "tick|gridded");
    add_option(cmd, over, "out_dir", "output directory");
    add_option(cmd, over, "session_open", "session open, HH:MM[:SS]");
    add_option(cmd, over, "session_close", "session close, HH:MM[:SS]");
    add_option(cmd, over, "step_seconds", "grid step in seconds");
    add_option(cmd, over, "expected_returns", "returns per day on the grid");
    add_option(cmd, over, "q_list", "comma-separated aggregation levels");
    add_option(cmd, over, "window_length", "rolling window in trading days");
    add_option(cmd, over, "level", "confidence level for rolling bands");
    add_option(cmd, over, "har_refit", "full_sample|per_window");
    add_option(cmd, over, "se_mode", "ols|white");
    add_option(cmd, over, "seed", "simulation seed");
    add_option(cmd, over, "sim_model", "iid|ar1|har_cascade");
    add_option(cmd, over, "sim_days", "simulated day count");
    add_option(cmd, over, "sim_sigma", "per-return innovation sd");
    add_option(cmd, over, "sim_phi", "ar1 coefficient");
    add_option(cmd, over, "sim_beta0", "cascade intercept");
    add_option(cmd, over, "sim_beta_d", "cascade daily coefficient");
    add_option(cmd, over, "sim_beta_w", "cascade weekly coefficient");
    add_option(cmd, over, "sim_beta_m", "cascade monthly coefficient");
    add_option(cmd, over, "sim_noise_sd", "cascade innovation sd");
}

PipelineConfig build_config(const CliOverrides& over) {
    PipelineConfig config;
    if (!over.config_file.empty()) {
        config = intravol::load_config_file(over.config_file);
    }
    for (const auto& [key, value] : over.entries) {
        intravol::apply_config_entry(config, key, value);
    }
    return config;
}

int exit_code_for(const intravol::Error& e) {
    switch (e.code()) {
        case intravol::ErrorCode::invalid_config:
        case intravol::ErrorCode::invalid_spec:
            return 1;
        default:
            return 2;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(intravol::kToolName) +
                 " — intraday serial-correlation and volatility pipelines"};
    app.set_version_flag("--version", std::string(intravol::kToolVersion));
    app.require_subcommand(1);

    struct Command {
        CLI::App* sub;
        CliOverrides overrides;
        std::function<void(const PipelineConfig&)> run;
    };
    std::vector<Command> commands;
    commands.reserve(6);

    auto add_command = [&](const char* name, const char* help,
                           void (*fn)(const PipelineConfig&)) {
        CLI::App* sub = app.add_subcommand(name, help);
        commands.push_back({sub, {}, fn});
        add_common_options(sub, commands.back().overrides);
    };
    add_command("resample", "previous-tick resample a tick CSV onto the grid",
                intravol::cmd_resample);
    add_command("metrics", "daily log RV and VR(q) from a gridded CSV",
                intravol::cmd_metrics);
    add_command("har", "volatility-cascade fit and decomposition from a metrics CSV",
                intravol::cmd_har);
    add_command("regress", "full-sample and rolling regressions from a metrics CSV",
                intravol::cmd_regress);
    add_command("simulate", "write a synthetic gridded CSV", intravol::cmd_simulate);
    add_command("pipeline", "run resample/metrics/har/regress end to end",
                intravol::cmd_pipeline);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    for (Command& command : commands) {
        if (!command.sub->parsed()) continue;
        try {
            command.run(build_config(command.overrides));
        } catch (const intravol::Error& e) {
            std::cerr << "error: " << e.what() << '\n';
            return exit_code_for(e);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return 2;
        }
    }
    return 0;
}
