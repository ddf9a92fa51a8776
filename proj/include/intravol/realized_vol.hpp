#pragma once

#include "intravol/dates.hpp"

#include <span>
#include <vector>

namespace intravol {

struct RvEntry {
    Date date;
    double rv = 0.0;     // sum of squared intraday returns, > 0
    double log_rv = 0.0; // ln(rv)
};

/// Date-ordered daily realized-variance series. Zero-RV days are rejected
/// upstream as degenerate, so rv > 0 and log_rv = ln(rv) hold throughout.
class RvSeries {
public:
    RvSeries() = default;

    static RvSeries from_log_rv(std::span<const Date> dates,
                                std::span<const double> log_rv);
    void append(Date date, double rv);

    std::span<const RvEntry> entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const RvEntry& operator[](std::size_t i) const { return entries_[i]; }

private:
    std::vector<RvEntry> entries_;
};

inline constexpr int kWeeklyHorizon = 5;
inline constexpr int kMonthlyHorizon = 22;

/// Daily realized variance: sum of squared intraday returns.
double realized_variance(std::span<const double> returns);

/// Mean of log_rv over the `horizon` trading days immediately preceding
/// index t. Lags are positions in the accepted-day sequence, not calendar
/// days.
double heterogeneous_average(const RvSeries& series, std::size_t t, int horizon);

} // namespace intravol
