#include "intravol/realized_vol.hpp"

#include "intravol/errors.hpp"
#include "intravol/numeric.hpp"

#include <cmath>
#include <string>

namespace intravol {

RvSeries RvSeries::from_log_rv(std::span<const Date> dates,
                               std::span<const double> log_rv) {
    if (dates.size() != log_rv.size()) {
        throw Error(ErrorCode::alignment_error,
                    "dates and log_rv lengths differ");
    }
    RvSeries series;
    series.entries_.reserve(dates.size());
    for (std::size_t i = 0; i < dates.size(); ++i) {
        if (!std::isfinite(log_rv[i])) {
            throw Error(ErrorCode::invalid_spec,
                        "non-finite log_rv at " + dates[i].to_string());
        }
        if (i > 0 && !(dates[i] > dates[i - 1])) {
            throw Error(ErrorCode::unordered_timestamps,
                        "dates not strictly increasing at " + dates[i].to_string());
        }
        series.entries_.push_back({dates[i], std::exp(log_rv[i]), log_rv[i]});
    }
    return series;
}

void RvSeries::append(Date date, double rv) {
    if (!(rv > 0.0) || !std::isfinite(rv)) {
        throw Error(ErrorCode::degenerate_day,
                    "realized variance must be positive and finite, got " +
                        std::to_string(rv) + " on " + date.to_string());
    }
    if (!entries_.empty() && !(date > entries_.back().date)) {
        throw Error(ErrorCode::unordered_timestamps,
                    "dates not strictly increasing at " + date.to_string());
    }
    entries_.push_back({date, rv, std::log(rv)});
}

double realized_variance(std::span<const double> returns) {
    if (returns.empty()) {
        throw Error(ErrorCode::empty_input, "realized variance of empty day");
    }
    CompensatedSum acc;
    for (double r : returns) acc.add(r * r);
    return acc.value();
}

double heterogeneous_average(const RvSeries& series, std::size_t t, int horizon) {
    if (horizon < 1) {
        throw Error(ErrorCode::invalid_spec, "horizon must be >= 1");
    }
    if (t > series.size() || t < static_cast<std::size_t>(horizon)) {
        throw Error(ErrorCode::insufficient_history,
                    "need " + std::to_string(horizon) + " entries before index " +
                        std::to_string(t));
    }
    CompensatedSum acc;
    for (std::size_t k = t - static_cast<std::size_t>(horizon); k < t; ++k) {
        acc.add(series[k].log_rv);
    }
    return acc.value() / static_cast<double>(horizon);
}

} // namespace intravol
