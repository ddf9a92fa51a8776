#include "intravol/pipeline.hpp"

#include "intravol/csv.hpp"
#include "intravol/errors.hpp"
#include "intravol/version.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace intravol {

namespace {

namespace fs = std::filesystem;

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return std::string(s.substr(b, e - b));
}

const char* input_kind_name(InputKind kind) {
    return kind == InputKind::tick ? "tick" : "gridded";
}

const char* sim_model_name(SimSpec::Model model) {
    switch (model) {
        case SimSpec::Model::iid_gaussian: return "iid";
        case SimSpec::Model::ar1: return "ar1";
        case SimSpec::Model::har_cascade: return "har_cascade";
    }
    return "unknown";
}

template <typename T>
T parse_number(const std::string& value, const std::string& key) {
    T out{};
    const char* first = value.data();
    const char* last = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last) {
        throw Error(ErrorCode::invalid_config,
                    "bad value '" + value + "' for " + key);
    }
    return out;
}

TimeOfDay parse_time_value(const std::string& value, const std::string& key) {
    auto tod = TimeOfDay::parse(value);
    if (!tod) {
        throw Error(ErrorCode::invalid_config, "bad time '" + value + "' for " + key);
    }
    return *tod;
}

std::vector<int> parse_q_list(const std::string& value) {
    std::vector<int> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_number<int>(trim(item), "q_list"));
    }
    if (out.empty()) {
        throw Error(ErrorCode::invalid_config, "q_list is empty");
    }
    return out;
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

void ensure_out_dir(const PipelineConfig& config) {
    if (!config.out_dir.empty()) fs::create_directories(config.out_dir);
}

fs::path out_path(const PipelineConfig& config, const char* name) {
    return fs::path(config.out_dir) / name;
}

void note_written(const fs::path& path) {
    std::cout << "wrote " << path.string() << '\n';
}

void note_rejections(std::span<const DayRejection> rejections, const fs::path& log) {
    if (!rejections.empty()) {
        std::cerr << "rejected " << rejections.size() << " day(s), see "
                  << log.string() << '\n';
    }
}

GriddedData load_gridded_input(const PipelineConfig& config) {
    if (config.input.empty()) {
        throw Error(ErrorCode::invalid_config, "no input file given");
    }
    if (config.input_kind != InputKind::gridded) {
        throw Error(ErrorCode::invalid_config, "this command needs gridded input");
    }
    return read_gridded_csv(config.input);
}

std::vector<ReturnPanel> resample_ticks(const PipelineConfig& config,
                                        std::vector<DayRejection>& rejections) {
    const TickSeries ticks = read_tick_csv(config.input);
    config.grid.validate();

    std::vector<Date> dates;
    for (const Tick& tick : ticks.records()) {
        const Date d = tick.ts.date();
        if (dates.empty() || d != dates.back()) dates.push_back(d);
    }

    std::vector<ReturnPanel> panels;
    panels.reserve(dates.size());
    for (Date date : dates) {
        try {
            DayGrid day = previous_tick_resample(ticks, config.grid, date);
            const DayValidation v = validate_day(day, config.grid);
            if (!v.accepted) {
                rejections.push_back({date, day_reject_name(v.reason)});
                continue;
            }
            panels.push_back({day.date, std::move(day.returns)});
        } catch (const Error& e) {
            if (e.code() == ErrorCode::no_price_before_open ||
                e.code() == ErrorCode::empty_day) {
                rejections.push_back({date, std::string(error_code_name(e.code()))});
                continue;
            }
            throw;
        }
    }
    return panels;
}

DailyMetrics metrics_from_panels(const PipelineConfig& config,
                                 const std::vector<ReturnPanel>& panels,
                                 int returns_per_day,
                                 std::vector<DayRejection>& rejections) {
    for (int q : config.q_levels) {
        if (q < 2 || 2 * q > returns_per_day) {
            throw Error(ErrorCode::invalid_config,
                        "q=" + std::to_string(q) + " outside 2.." +
                            std::to_string(returns_per_day / 2) + " for " +
                            std::to_string(returns_per_day) + " returns/day");
        }
    }
    return compute_daily_metrics(panels, config.q_levels, returns_per_day, &rejections);
}

void require_q_columns(const PipelineConfig& config, const DailyMetrics& metrics) {
    for (int q : config.q_levels) {
        bool found = false;
        for (int have : metrics.q_levels) found = found || have == q;
        if (!found) {
            throw Error(ErrorCode::parse_error,
                        "input metrics lack a vr_" + std::to_string(q) + " column");
        }
    }
}

void run_regressions(const PipelineConfig& config, const DailyMetrics& metrics) {
    require_q_columns(config, metrics);
    const RvSeries series = RvSeries::from_log_rv(metrics.dates, metrics.log_rv);
    const HarFit har = fit_har(series);
    const std::string provenance = config.provenance_line();

    constexpr std::array<RegressionSpecKind, 3> specs = {
        RegressionSpecKind::simple, RegressionSpecKind::lagged,
        RegressionSpecKind::decomposed};

    std::vector<RegressionResult> full_sample;
    for (int q : config.q_levels) {
        for (RegressionSpecKind spec : specs) {
            full_sample.push_back(
                full_sample_regression(spec, metrics, q, &har, config.se_mode));
        }
    }
    const fs::path table_path = out_path(config, "regress_full_sample.csv");
    write_full_sample_csv(table_path, full_sample, provenance);
    note_written(table_path);

    RollingOptions opts;
    opts.window_length = config.window_length;
    opts.level = config.level;
    opts.se_mode = config.se_mode;
    opts.har_refit = config.har_refit;
    for (RegressionSpecKind spec : specs) {
        for (int q : config.q_levels) {
            const RollingSeries rolling =
                rolling_regression(spec, metrics, q, &har, opts);
            char name[64];
            std::snprintf(name, sizeof(name), "rolling_%s_q%d.csv",
                          regression_spec_name(spec), q);
            const fs::path path = out_path(config, name);
            write_rolling_csv(path, rolling, provenance);
            note_written(path);
        }
    }
}

} // namespace

void PipelineConfig::validate() const {
    if (q_levels.empty()) {
        throw Error(ErrorCode::invalid_config, "q_list is empty");
    }
    for (int q : q_levels) {
        if (q < 2 || 2 * q > grid.expected_returns) {
            throw Error(ErrorCode::invalid_config,
                        "q=" + std::to_string(q) + " outside 2.." +
                            std::to_string(grid.expected_returns / 2));
        }
    }
    if (!(level > 0.0 && level < 1.0)) {
        throw Error(ErrorCode::invalid_config, "level must be in (0,1)");
    }
    if (window_length < 4) {
        throw Error(ErrorCode::invalid_config, "window_length must be >= 4");
    }
}

SimSpec PipelineConfig::sim_spec() const {
    SimSpec spec;
    spec.model = sim_model;
    spec.days = sim_days;
    spec.returns_per_day = grid.expected_returns;
    spec.seed = seed;
    spec.sigma = sim_sigma;
    spec.phi = sim_phi;
    spec.beta0 = sim_beta0;
    spec.beta_d = sim_beta_d;
    spec.beta_w = sim_beta_w;
    spec.beta_m = sim_beta_m;
    spec.noise_sd = sim_noise_sd;
    return spec;
}

std::string PipelineConfig::canonical_string() const {
    std::ostringstream out;
    out << "input=" << input << '\n'
        << "input_kind=" << input_kind_name(input_kind) << '\n'
        << "out_dir=" << out_dir << '\n'
        << "session_open=" << grid.session_open.to_string() << '\n'
        << "session_close=" << grid.session_close.to_string() << '\n'
        << "step_seconds=" << grid.step_ms / 1000 << '\n'
        << "expected_returns=" << grid.expected_returns << '\n';
    out << "q_list=";
    for (std::size_t i = 0; i < q_levels.size(); ++i) {
        out << (i ? "," : "") << q_levels[i];
    }
    out << '\n';
    out << "window_length=" << window_length << '\n'
        << "level=" << format_double(level) << '\n'
        << "har_refit="
        << (har_refit == HarRefitMode::full_sample ? "full_sample" : "per_window")
        << '\n'
        << "se_mode=" << (se_mode == SeMode::ols ? "ols" : "white") << '\n'
        << "seed=" << seed << '\n'
        << "sim_model=" << sim_model_name(sim_model) << '\n'
        << "sim_days=" << sim_days << '\n'
        << "sim_sigma=" << format_double(sim_sigma) << '\n'
        << "sim_phi=" << format_double(sim_phi) << '\n'
        << "sim_beta0=" << format_double(sim_beta0) << '\n'
        << "sim_beta_d=" << format_double(sim_beta_d) << '\n'
        << "sim_beta_w=" << format_double(sim_beta_w) << '\n'
        << "sim_beta_m=" << format_double(sim_beta_m) << '\n'
        << "sim_noise_sd=" << format_double(sim_noise_sd) << '\n';
    return out.str();
}

std::string PipelineConfig::config_hash() const {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(canonical_string())));
    return buf;
}

std::string PipelineConfig::provenance_line() const {
    return "# " + std::string(kToolName) + " " + std::string(kToolVersion) +
           " config=" + config_hash();
}

void apply_config_entry(PipelineConfig& config, const std::string& key,
                        const std::string& value) {
    if (key == "input") {
        config.input = value;
    } else if (key == "input_kind") {
        if (value == "tick") config.input_kind = InputKind::tick;
        else if (value == "gridded") config.input_kind = InputKind::gridded;
        else throw Error(ErrorCode::invalid_config, "input_kind must be tick|gridded");
    } else if (key == "out_dir") {
        config.out_dir = value;
    } else if (key == "session_open") {
        config.grid.session_open = parse_time_value(value, key);
    } else if (key == "session_close") {
        config.grid.session_close = parse_time_value(value, key);
    } else if (key == "step_seconds") {
        config.grid.step_ms = parse_number<std::int64_t>(value, key) * 1000;
    } else if (key == "expected_returns") {
        config.grid.expected_returns = parse_number<int>(value, key);
    } else if (key == "q_list") {
        config.q_levels = parse_q_list(value);
    } else if (key == "window_length") {
        config.window_length = parse_number<int>(value, key);
    } else if (key == "level") {
        config.level = parse_number<double>(value, key);
    } else if (key == "har_refit") {
        if (value == "full_sample") config.har_refit = HarRefitMode::full_sample;
        else if (value == "per_window") config.har_refit = HarRefitMode::per_window;
        else throw Error(ErrorCode::invalid_config, "har_refit must be full_sample|per_window");
    } else if (key == "se_mode") {
        if (value == "ols") config.se_mode = SeMode::ols;
        else if (value == "white") config.se_mode = SeMode::white;
        else throw Error(ErrorCode::invalid_config, "se_mode must be ols|white");
    } else if (key == "seed") {
        config.seed = parse_number<std::uint64_t>(value, key);
    } else if (key == "sim_model") {
        if (value == "iid") config.sim_model = SimSpec::Model::iid_gaussian;
        else if (value == "ar1") config.sim_model = SimSpec::Model::ar1;
        else if (value == "har_cascade") config.sim_model = SimSpec::Model::har_cascade;
        else throw Error(ErrorCode::invalid_config, "sim_model must be iid|ar1|har_cascade");
    } else if (key == "sim_days") {
        config.sim_days = parse_number<int>(value, key);
    } else if (key == "sim_sigma") {
        config.sim_sigma = parse_number<double>(value, key);
    } else if (key == "sim_phi") {
        config.sim_phi = parse_number<double>(value, key);
    } else if (key == "sim_beta0") {
        config.sim_beta0 = parse_number<double>(value, key);
    } else if (key == "sim_beta_d") {
        config.sim_beta_d = parse_number<double>(value, key);
    } else if (key == "sim_beta_w") {
        config.sim_beta_w = parse_number<double>(value, key);
    } else if (key == "sim_beta_m") {
        config.sim_beta_m = parse_number<double>(value, key);
    } else if (key == "sim_noise_sd") {
        config.sim_noise_sd = parse_number<double>(value, key);
    } else {
        throw Error(ErrorCode::invalid_config, "unknown config key '" + key + "'");
    }
}

PipelineConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::invalid_config, "cannot open config " + path.string());
    }
    PipelineConfig config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;
        const std::size_t eq = text.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::invalid_config,
                        path.string() + ":" + std::to_string(line_no) +
                            ": expected key = value");
        }
        apply_config_entry(config, trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
    }
    return config;
}

void cmd_resample(const PipelineConfig& config) {
    config.validate();
    if (config.input.empty()) {
        throw Error(ErrorCode::invalid_config, "no input file given");
    }
    ensure_out_dir(config);
    std::vector<DayRejection> rejections;
    const auto panels = resample_ticks(config, rejections);

    const std::string provenance = config.provenance_line();
    const fs::path grid_path = out_path(config, "gridded.csv");
    const fs::path reject_path = out_path(config, "resample_rejections.csv");
    write_gridded_csv(grid_path, panels, provenance);
    write_rejections_csv(reject_path, rejections, provenance);
    note_written(grid_path);
    note_rejections(rejections, reject_path);
}

void cmd_metrics(const PipelineConfig& config) {
    config.validate();
    ensure_out_dir(config);
    const GriddedData data = load_gridded_input(config);

    std::vector<DayRejection> rejections;
    const DailyMetrics metrics =
        metrics_from_panels(config, data.panels, data.returns_per_day, rejections);

    const std::string provenance = config.provenance_line();
    const fs::path metrics_path = out_path(config, "metrics.csv");
    const fs::path reject_path = out_path(config, "metrics_rejections.csv");
    write_metrics_csv(metrics_path, metrics, provenance);
    write_rejections_csv(reject_path, rejections, provenance);
    note_written(metrics_path);
    note_rejections(rejections, reject_path);
}

void cmd_har(const PipelineConfig& config) {
    config.validate();
    if (config.input.empty()) {
        throw Error(ErrorCode::invalid_config, "no input file given");
    }
    ensure_out_dir(config);
    const DailyMetrics metrics = read_metrics_csv(config.input);
    const RvSeries series = RvSeries::from_log_rv(metrics.dates, metrics.log_rv);
    const HarFit fit = fit_har(series);

    const std::string provenance = config.provenance_line();
    const fs::path series_path = out_path(config, "har_series.csv");
    const fs::path coef_path = out_path(config, "har_coefficients.csv");
    write_har_series_csv(series_path, fit, provenance);
    write_har_coefficients_csv(coef_path, fit, provenance);
    note_written(series_path);
    note_written(coef_path);
}

void cmd_regress(const PipelineConfig& config) {
    config.validate();
    if (config.input.empty()) {
        throw Error(ErrorCode::invalid_config, "no input file given");
    }
    ensure_out_dir(config);
    run_regressions(config, read_metrics_csv(config.input));
}

void cmd_simulate(const PipelineConfig& config) {
    config.validate();
    ensure_out_dir(config);
    const std::vector<ReturnPanel> panels = generate_panels(config.sim_spec());
    const fs::path path = out_path(config, "simulated.csv");
    write_gridded_csv(path, panels, config.provenance_line());
    note_written(path);
}

void cmd_pipeline(const PipelineConfig& config) {
    config.validate();
    if (config.input.empty()) {
        throw Error(ErrorCode::invalid_config, "no input file given");
    }
    ensure_out_dir(config);
    const std::string provenance = config.provenance_line();

    std::vector<ReturnPanel> panels;
    int returns_per_day = config.grid.expected_returns;
    std::vector<DayRejection> grid_rejections;
    if (config.input_kind == InputKind::tick) {
        panels = resample_ticks(config, grid_rejections);
        const fs::path grid_path = out_path(config, "gridded.csv");
        const fs::path reject_path = out_path(config, "resample_rejections.csv");
        write_gridded_csv(grid_path, panels, provenance);
        write_rejections_csv(reject_path, grid_rejections, provenance);
        note_written(grid_path);
        note_rejections(grid_rejections, reject_path);
    } else {
        GriddedData data = read_gridded_csv(config.input);
        panels = std::move(data.panels);
        returns_per_day = data.returns_per_day;
    }

    std::vector<DayRejection> rejections;
    const DailyMetrics metrics =
        metrics_from_panels(config, panels, returns_per_day, rejections);
    const fs::path metrics_path = out_path(config, "metrics.csv");
    const fs::path reject_path = out_path(config, "metrics_rejections.csv");
    write_metrics_csv(metrics_path, metrics, provenance);
    write_rejections_csv(reject_path, rejections, provenance);
    note_written(metrics_path);
    note_rejections(rejections, reject_path);

    const RvSeries series = RvSeries::from_log_rv(metrics.dates, metrics.log_rv);
    const HarFit fit = fit_har(series);
    const fs::path har_series_path = out_path(config, "har_series.csv");
    const fs::path har_coef_path = out_path(config, "har_coefficients.csv");
    write_har_series_csv(har_series_path, fit, provenance);
    write_har_coefficients_csv(har_coef_path, fit, provenance);
    note_written(har_series_path);
    note_written(har_coef_path);

    run_regressions(config, metrics);
}

} // namespace intravol
