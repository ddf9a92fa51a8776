#pragma once

#include "intravol/daily_metrics.hpp"
#include "intravol/grid.hpp"
#include "intravol/har.hpp"
#include "intravol/regress.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace intravol {

/// Deterministic double formatting used in every CSV (15 significant
/// digits, locale independent).
std::string format_double(double value);

/// Writes content to a sibling temp file, then renames into place, so
/// readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

struct GriddedData {
    int returns_per_day = 0;
    std::vector<ReturnPanel> panels;
};

// Readers skip '#' comment lines and report failures with file:line context.
TickSeries read_tick_csv(const std::filesystem::path& path);
GriddedData read_gridded_csv(const std::filesystem::path& path);
DailyMetrics read_metrics_csv(const std::filesystem::path& path);

// Writers; `provenance` is emitted verbatim as the first line when nonempty.
void write_gridded_csv(const std::filesystem::path& path,
                       std::span<const ReturnPanel> panels,
                       const std::string& provenance);
void write_metrics_csv(const std::filesystem::path& path, const DailyMetrics& metrics,
                       const std::string& provenance);
void write_har_series_csv(const std::filesystem::path& path, const HarFit& fit,
                          const std::string& provenance);
void write_har_coefficients_csv(const std::filesystem::path& path, const HarFit& fit,
                                const std::string& provenance);
void write_full_sample_csv(const std::filesystem::path& path,
                           std::span<const RegressionResult> results,
                           const std::string& provenance);
void write_rolling_csv(const std::filesystem::path& path, const RollingSeries& series,
                       const std::string& provenance);
void write_rejections_csv(const std::filesystem::path& path,
                          std::span<const DayRejection> rejections,
                          const std::string& provenance);

/// Generic parsed CSV (header + string cells), for tooling and tests.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};
CsvTable read_csv_table(const std::filesystem::path& path);

} // namespace intravol
