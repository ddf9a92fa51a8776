#include "intravol/grid.hpp"

#include "intravol/errors.hpp"

#include <algorithm>
#include <cmath>

namespace intravol {

namespace {

void check_tick(const Tick& tick, const Tick* prev) {
    if (!(tick.price > 0.0)) {
        throw Error(ErrorCode::non_positive_price,
                    "tick at " + tick.ts.to_string() + " has price " +
                        std::to_string(tick.price));
    }
    if (prev != nullptr && tick.ts < prev->ts) {
        throw Error(ErrorCode::unordered_timestamps,
                    "tick at " + tick.ts.to_string() + " precedes " +
                        prev->ts.to_string());
    }
}

} // namespace

TickSeries TickSeries::from_ticks(std::vector<Tick> ticks) {
    for (std::size_t i = 0; i < ticks.size(); ++i) {
        check_tick(ticks[i], i > 0 ? &ticks[i - 1] : nullptr);
    }
    TickSeries series;
    series.records_ = std::move(ticks);
    return series;
}

void TickSeries::append(const Tick& tick) {
    check_tick(tick, records_.empty() ? nullptr : &records_.back());
    records_.push_back(tick);
}

void GridSpec::validate() const {
    if (step_ms <= 0) {
        throw Error(ErrorCode::invalid_spec, "grid step must be positive");
    }
    if (expected_returns <= 0) {
        throw Error(ErrorCode::invalid_spec, "expected_returns must be positive");
    }
    const std::int64_t span = session_close.ms - session_open.ms;
    if (span != step_ms * expected_returns) {
        throw Error(ErrorCode::invalid_spec,
                    "session " + session_open.to_string() + ".." +
                        session_close.to_string() + " does not tile into " +
                        std::to_string(expected_returns) + " steps of " +
                        std::to_string(step_ms) + " ms");
    }
}

const char* day_reject_name(DayReject reason) {
    switch (reason) {
        case DayReject::none: return "None";
        case DayReject::wrong_length: return "WrongLength";
        case DayReject::non_finite: return "NonFinite";
    }
    return "Unknown";
}

DayGrid previous_tick_resample(const TickSeries& ticks, const GridSpec& spec, Date date) {
    spec.validate();
    const auto records = ticks.records();
    const Timestamp day_begin{static_cast<std::int64_t>(date.serial()) * kMillisPerDay};
    const Timestamp day_end{day_begin.ms + kMillisPerDay};

    auto lo = std::lower_bound(records.begin(), records.end(), day_begin,
                               [](const Tick& t, Timestamp ts) { return t.ts < ts; });
    auto hi = std::lower_bound(lo, records.end(), day_end,
                               [](const Tick& t, Timestamp ts) { return t.ts < ts; });
    if (lo == hi) {
        throw Error(ErrorCode::empty_day, "no ticks on " + date.to_string());
    }

    const Timestamp open = Timestamp::at(date, spec.session_open);
    if (lo->ts > open) {
        throw Error(ErrorCode::no_price_before_open,
                    date.to_string() + ": first tick " + lo->ts.to_string() +
                        " is after session open " + spec.session_open.to_string());
    }

    DayGrid day;
    day.date = date;
    day.grid_prices.resize(static_cast<std::size_t>(spec.expected_returns) + 1);
    auto it = lo;
    for (int j = 0; j <= spec.expected_returns; ++j) {
        const Timestamp instant{open.ms + spec.step_ms * j};
        // advance to the last tick with ts <= instant ("at or before")
        while (std::next(it) != hi && std::next(it)->ts <= instant) ++it;
        day.grid_prices[static_cast<std::size_t>(j)] = it->price;
    }
    day.returns = log_returns(day.grid_prices);
    return day;
}

std::vector<double> log_returns(std::span<const double> prices) {
    if (prices.size() < 2) {
        throw Error(ErrorCode::too_short, "need at least 2 prices for log returns");
    }
    std::vector<double> out(prices.size() - 1);
    for (std::size_t i = 0; i + 1 < prices.size(); ++i) {
        if (!(prices[i] > 0.0) || !(prices[i + 1] > 0.0)) {
            throw Error(ErrorCode::non_positive_price,
                        "price at index " + std::to_string(prices[i] > 0.0 ? i + 1 : i) +
                            " is not positive");
        }
        out[i] = std::log(prices[i + 1]) - std::log(prices[i]);
    }
    return out;
}

DayValidation validate_day(std::span<const double> returns, int expected_returns) noexcept {
    if (returns.size() != static_cast<std::size_t>(expected_returns)) {
        return {false, DayReject::wrong_length};
    }
    for (double r : returns) {
        if (!std::isfinite(r)) return {false, DayReject::non_finite};
    }
    return {true, DayReject::none};
}

DayValidation validate_day(const ReturnPanel& panel, const GridSpec& spec) noexcept {
    return validate_day(panel.returns, spec.expected_returns);
}

DayValidation validate_day(const DayGrid& day, const GridSpec& spec) noexcept {
    return validate_day(day.returns, spec.expected_returns);
}

} // namespace intravol
