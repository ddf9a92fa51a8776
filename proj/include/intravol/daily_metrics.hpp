#pragma once

#include "intravol/dates.hpp"
#include "intravol/grid.hpp"

#include <span>
#include <string>
#include <vector>

namespace intravol {

/// Per-day log realized variance and VR(q) for the configured q levels,
/// over the accepted-day sequence (rejected days simply do not appear).
struct DailyMetrics {
    std::vector<Date> dates;
    std::vector<double> log_rv;
    std::vector<int> q_levels;
    std::vector<std::vector<double>> vr; // vr[i] parallel to q_levels[i]

    std::size_t size() const noexcept { return dates.size(); }
    const std::vector<double>& vr_for(int q) const; // throws InvalidSpec
};

struct DayRejection {
    Date date;
    std::string reason; // WrongLength | NonFinite | DegenerateDay | ...
};

/// Runs validation, realized variance and the variance-ratio statistics over
/// a date-sorted panel sequence. Rejected days are appended to `rejections`
/// (when given) and skipped; the pipeline never pads.
DailyMetrics compute_daily_metrics(std::span<const ReturnPanel> panels,
                                   std::span<const int> q_levels,
                                   int expected_returns,
                                   std::vector<DayRejection>* rejections = nullptr);

} // namespace intravol
