#pragma once

#include "intravol/dates.hpp"
#include "intravol/grid.hpp"
#include "intravol/regress.hpp"
#include "intravol/simulate.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace intravol {

enum class InputKind { tick, gridded };

/// Effective configuration of one command run. Reruns with an identical
/// config (and seed) produce byte-identical outputs; the canonical string
/// below is hashed into every output file's provenance line.
struct PipelineConfig {
    std::string input;
    InputKind input_kind = InputKind::gridded;
    std::string out_dir = ".";

    GridSpec grid; // session bounds, step, expected_returns

    std::vector<int> q_levels = {2, 3, 4, 5, 6};
    int window_length = 1250;
    double level = 0.95;
    HarRefitMode har_refit = HarRefitMode::full_sample;
    SeMode se_mode = SeMode::ols;

    std::uint64_t seed = 0;
    SimSpec::Model sim_model = SimSpec::Model::iid_gaussian;
    int sim_days = 0;
    double sim_sigma = 1.0;
    double sim_phi = 0.0;
    double sim_beta0 = 0.0;
    double sim_beta_d = 0.0;
    double sim_beta_w = 0.0;
    double sim_beta_m = 0.0;
    double sim_noise_sd = 0.0;

    void validate() const; // throws InvalidConfig
    SimSpec sim_spec() const;
    std::string canonical_string() const;
    std::string config_hash() const; // FNV-1a 64 over the canonical string
    std::string provenance_line() const;
};

/// Loads `key = value` entries ('#' comments allowed) into a default
/// config. Unknown keys are rejected.
PipelineConfig load_config_file(const std::filesystem::path& path);
void apply_config_entry(PipelineConfig& config, const std::string& key,
                        const std::string& value);

// Command entry points. Outputs land in config.out_dir; errors are thrown
// as intravol::Error (the CLI maps them to exit codes).
void cmd_resample(const PipelineConfig& config);
void cmd_metrics(const PipelineConfig& config);
void cmd_har(const PipelineConfig& config);
void cmd_regress(const PipelineConfig& config);
void cmd_simulate(const PipelineConfig& config);
void cmd_pipeline(const PipelineConfig& config);

} // namespace intravol
