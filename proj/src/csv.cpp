#include "intravol/csv.hpp"

#include "intravol/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace intravol {

namespace {

std::string location(const std::filesystem::path& path, std::size_t line_no) {
    return path.string() + ":" + std::to_string(line_no);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

double parse_double(std::string_view field, const std::filesystem::path& path,
                    std::size_t line_no) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw Error(ErrorCode::parse_error,
                    location(path, line_no) + ": bad number '" +
                        std::string(field) + "'");
    }
    return value;
}

bool is_integer_field(std::string_view field) {
    if (field.empty()) return false;
    std::size_t i = (field[0] == '-' || field[0] == '+') ? 1 : 0;
    if (i == field.size()) return false;
    return std::all_of(field.begin() + static_cast<std::ptrdiff_t>(i), field.end(),
                       [](unsigned char c) { return std::isdigit(c); });
}

/// Reads all lines, strips trailing '\r', drops '#' comments and blank
/// lines; keeps original line numbers for error reporting.
struct Line {
    std::string text;
    std::size_t number = 0;
};

std::vector<Line> read_data_lines(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::io_error, "cannot open " + path.string());
    }
    std::vector<Line> lines;
    std::string raw;
    std::size_t n = 0;
    while (std::getline(in, raw)) {
        ++n;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (raw.empty() || raw[0] == '#') continue;
        lines.push_back({raw, n});
    }
    return lines;
}

void require_header(const Line& line, std::string_view expected,
                    const std::filesystem::path& path) {
    if (line.text != expected) {
        throw Error(ErrorCode::parse_error,
                    location(path, line.number) + ": expected header '" +
                        std::string(expected) + "', got '" + line.text + "'");
    }
}

Date parse_date_field(std::string_view field, const std::filesystem::path& path,
                      std::size_t line_no) {
    auto date = Date::parse(field);
    if (!date) {
        throw Error(ErrorCode::parse_error,
                    location(path, line_no) + ": bad date '" + std::string(field) + "'");
    }
    return *date;
}

} // namespace

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", value);
    return buf;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(ErrorCode::io_error, "cannot open " + tmp.string() + " for writing");
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw Error(ErrorCode::io_error, "short write to " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

TickSeries read_tick_csv(const std::filesystem::path& path) {
    const auto lines = read_data_lines(path);
    if (lines.empty()) {
        throw Error(ErrorCode::empty_input, path.string() + " has no data");
    }
    require_header(lines.front(), "timestamp,price", path);
    if (lines.size() == 1) {
        throw Error(ErrorCode::empty_input, path.string() + " has a header but no rows");
    }

    // timestamp format is detected once per file, from the first data row
    const bool epoch_ms = is_integer_field(split_fields(lines[1].text).front());

    TickSeries series;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_fields(lines[i].text);
        if (fields.size() != 2) {
            throw Error(ErrorCode::parse_error,
                        location(path, lines[i].number) + ": expected 2 fields, got " +
                            std::to_string(fields.size()));
        }
        Tick tick;
        if (epoch_ms) {
            std::int64_t ms = 0;
            auto [ptr, ec] = std::from_chars(fields[0].data(),
                                             fields[0].data() + fields[0].size(), ms);
            if (ec != std::errc() || ptr != fields[0].data() + fields[0].size()) {
                throw Error(ErrorCode::parse_error,
                            location(path, lines[i].number) + ": bad epoch timestamp '" +
                                std::string(fields[0]) + "'");
            }
            tick.ts = Timestamp{ms};
        } else {
            auto ts = Timestamp::parse_iso(fields[0]);
            if (!ts) {
                throw Error(ErrorCode::parse_error,
                            location(path, lines[i].number) + ": bad timestamp '" +
                                std::string(fields[0]) + "'");
            }
            tick.ts = *ts;
        }
        tick.price = parse_double(fields[1], path, lines[i].number);
        try {
            series.append(tick);
        } catch (const Error& e) {
            throw Error(e.code(), location(path, lines[i].number) + ": " + e.what());
        }
    }
    return series;
}

GriddedData read_gridded_csv(const std::filesystem::path& path) {
    const auto lines = read_data_lines(path);
    if (lines.empty()) {
        throw Error(ErrorCode::empty_input, path.string() + " has no data");
    }
    const auto header = split_fields(lines.front().text);
    if (header.size() < 2 || header[0] != "date") {
        throw Error(ErrorCode::parse_error,
                    location(path, lines.front().number) + ": expected 'date,r1,...' header");
    }
    for (std::size_t j = 1; j < header.size(); ++j) {
        if (header[j] != "r" + std::to_string(j)) {
            throw Error(ErrorCode::parse_error,
                        location(path, lines.front().number) + ": expected column r" +
                            std::to_string(j) + ", got '" + std::string(header[j]) + "'");
        }
    }

    GriddedData out;
    out.returns_per_day = static_cast<int>(header.size()) - 1;
    out.panels.reserve(lines.size() - 1);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_fields(lines[i].text);
        if (fields.size() != header.size()) {
            throw Error(ErrorCode::parse_error,
                        location(path, lines[i].number) + ": expected " +
                            std::to_string(header.size()) + " fields, got " +
                            std::to_string(fields.size()));
        }
        ReturnPanel panel;
        panel.date = parse_date_field(fields[0], path, lines[i].number);
        if (!out.panels.empty() && !(panel.date > out.panels.back().date)) {
            throw Error(ErrorCode::unordered_timestamps,
                        location(path, lines[i].number) +
                            ": dates must be strictly increasing");
        }
        panel.returns.reserve(fields.size() - 1);
        for (std::size_t j = 1; j < fields.size(); ++j) {
            panel.returns.push_back(parse_double(fields[j], path, lines[i].number));
        }
        out.panels.push_back(std::move(panel));
    }
    return out;
}

DailyMetrics read_metrics_csv(const std::filesystem::path& path) {
    const auto lines = read_data_lines(path);
    if (lines.empty()) {
        throw Error(ErrorCode::empty_input, path.string() + " has no data");
    }
    const auto header = split_fields(lines.front().text);
    if (header.size() < 3 || header[0] != "date" || header[1] != "log_rv") {
        throw Error(ErrorCode::parse_error,
                    location(path, lines.front().number) +
                        ": expected 'date,log_rv,vr_<q>,...' header");
    }

    DailyMetrics out;
    for (std::size_t j = 2; j < header.size(); ++j) {
        const std::string_view name = header[j];
        int q = 0;
        bool ok = name.size() > 3 && name.substr(0, 3) == "vr_";
        if (ok) {
            auto [ptr, ec] = std::from_chars(name.data() + 3, name.data() + name.size(), q);
            ok = ec == std::errc() && ptr == name.data() + name.size() && q >= 1;
        }
        if (!ok) {
            throw Error(ErrorCode::parse_error,
                        location(path, lines.front().number) + ": bad VR column '" +
                            std::string(name) + "'");
        }
        out.q_levels.push_back(q);
    }
    out.vr.resize(out.q_levels.size());

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_fields(lines[i].text);
        if (fields.size() != header.size()) {
            throw Error(ErrorCode::parse_error,
                        location(path, lines[i].number) + ": expected " +
                            std::to_string(header.size()) + " fields, got " +
                            std::to_string(fields.size()));
        }
        const Date date = parse_date_field(fields[0], path, lines[i].number);
        if (!out.dates.empty() && !(date > out.dates.back())) {
            throw Error(ErrorCode::unordered_timestamps,
                        location(path, lines[i].number) +
                            ": dates must be strictly increasing");
        }
        out.dates.push_back(date);
        out.log_rv.push_back(parse_double(fields[1], path, lines[i].number));
        for (std::size_t j = 2; j < fields.size(); ++j) {
            out.vr[j - 2].push_back(parse_double(fields[j], path, lines[i].number));
        }
    }
    return out;
}

void write_gridded_csv(const std::filesystem::path& path,
                       std::span<const ReturnPanel> panels,
                       const std::string& provenance) {
    std::ostringstream out;
    if (!provenance.empty()) out << provenance << '\n';
    const std::size_t n = panels.empty() ? 0 : panels.front().returns.size();
    out << "date";
    for (std::size_t j = 1; j <= n; ++j) out << ",r" << j;
    out << '\n';
    for (const ReturnPanel& panel : panels) {
        out << panel.date.to_string();
        for (double r : panel.returns) out << ',' << format_double(r);
        out << '\n';
    }
    write_file_atomic(path, out.str());
}

void write_metrics_csv(const std::filesystem::path& path, const DailyMetrics& metrics,
                       const std::string& provenance) {
    std::ostringstream out;
    if (!provenance.empty()) out << provenance << '\n';
    out << "date,log_rv";
    for (int q : metrics.q_levels) out << ",vr_" << q;
    out << '\n';
    for (std::size_t i = 0; i < metrics.size(); ++i) {
        out << metrics.dates[i].to_string() << ',' << format_double(metrics.log_rv[i]);
        for (std::size_t k = 0; k < metrics.q_levels.size(); ++k) {
            out << ',' << format_double(metrics.vr[k][i]);
        }
        out << '\n';
    }
    write_file_atomic(path, out.str());
}

void write_har_series_csv(const std::filesystem::path& path, const HarFit& fit,
                          const std::string& provenance) {
    std::ostringstream out;
    if (!provenance.empty()) out << provenance << '\n';
    out << "date,log_rv,sigma_p,sigma_u\n";
    for (std::size_t i = 0; i < fit.dates.size(); ++i) {
        out << fit.dates[i].to_string() << ',' << format_double(fit.log_rv[i]) << ','
            << format_double(fit.sigma_p[i]) << ',' << format_double(fit.sigma_u[i])
            << '\n';
    }
    write_file_atomic(path, out.str());
}

void write_har_coefficients_csv(const std::filesystem::path& path, const HarFit& fit,
                                const std::string& provenance) {
    std::ostringstream out;
    if (!provenance.empty()) out << provenance << '\n';
    out << "# n_obs=" << fit.n_obs << '\n';
    out << "name,estimate,std_error\n";
    const char* names[4] = {"beta0", "beta_d", "beta_w", "beta_m"};
    const double values[4] = {fit.beta0, fit.beta_d, fit.beta_w, fit.beta_m};
    for (int i = 0; i < 4; ++i) {
        out << names[i] << ',' << format_double(values[i]) << ','
            << format_double(fit.std_errors[static_cast<std::size_t>(i)]) << '\n';
    }
    write_file_atomic(path, out.str());
}

void write_full_sample_csv(const std::filesystem::path& path,
                           std::span<const RegressionResult> results,
                           const std::string& provenance) {
    std::ostringstream out;
    if (!provenance.empty()) out << provenance << '\n';
    out << "q,spec,coef_name,estimate,std_error,adj_r2_pct,n_obs\n";
    for (const RegressionResult& r : results) {
        for (std::size_t j = 0; j < r.names.size(); ++j) {
            out << r.q << ',' << r.spec_name << ',' << r.names[j] << ','
                << format_double(r.coefficients[j]) << ','
                << format_double(r.standard_errors[j]) << ','
                << format_double(100.0 * r.adj_r2) << ',' << r.n_obs << '\n';
        }
    }
    write_file_atomic(path, out.str());
}

void write_rolling_csv(const std::filesystem::path& path, const RollingSeries& series,
                       const std::string& provenance) {
    std::ostringstream out;
    if (!provenance.empty()) out << provenance << '\n';
    out << "window_end_date,coef_name,estimate,ci_low,ci_high\n";
    for (const RollingWindow& w : series.windows) {
        for (std::size_t j = 0; j < w.result.names.size(); ++j) {
            out << w.window_end.to_string() << ',' << w.result.names[j] << ','
                << format_double(w.result.coefficients[j]) << ','
                << format_double(w.ci_low[j]) << ',' << format_double(w.ci_high[j])
                << '\n';
        }
    }
    write_file_atomic(path, out.str());
}

void write_rejections_csv(const std::filesystem::path& path,
                          std::span<const DayRejection> rejections,
                          const std::string& provenance) {
    std::ostringstream out;
    if (!provenance.empty()) out << provenance << '\n';
    out << "date,reason\n";
    for (const DayRejection& r : rejections) {
        out << r.date.to_string() << ',' << r.reason << '\n';
    }
    write_file_atomic(path, out.str());
}

CsvTable read_csv_table(const std::filesystem::path& path) {
    const auto lines = read_data_lines(path);
    if (lines.empty()) {
        throw Error(ErrorCode::empty_input, path.string() + " has no data");
    }
    CsvTable table;
    for (auto field : split_fields(lines.front().text)) {
        table.header.emplace_back(field);
    }
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::vector<std::string> row;
        for (auto field : split_fields(lines[i].text)) row.emplace_back(field);
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace intravol
