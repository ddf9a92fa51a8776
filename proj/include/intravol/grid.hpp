#pragma once

#include "intravol/dates.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace intravol {

struct Tick {
    Timestamp ts;
    double price = 0.0;
};

/// Timestamped trade prices for one instrument. Invariants enforced on
/// construction: timestamps non-decreasing, every price > 0.
class TickSeries {
public:
    TickSeries() = default;

    static TickSeries from_ticks(std::vector<Tick> ticks);
    void append(const Tick& tick);

    std::span<const Tick> records() const noexcept { return records_; }
    bool empty() const noexcept { return records_.empty(); }
    std::size_t size() const noexcept { return records_.size(); }

private:
    std::vector<Tick> records_;
};

/// Regular intraday sampling grid. The session must tile exactly:
/// (session_close - session_open) / step == expected_returns.
struct GridSpec {
    TimeOfDay session_open{9 * 3'600'000LL};
    TimeOfDay session_close{16 * 3'600'000LL};
    std::int64_t step_ms = 5 * 60'000LL;
    int expected_returns = 84;

    void validate() const; // throws InvalidSpec
};

/// One trading day's resampled price grid and its intraday log returns.
struct DayGrid {
    Date date;
    std::vector<double> grid_prices; // expected_returns + 1 values
    std::vector<double> returns;     // expected_returns log differences
};

/// Date plus intraday log returns only; the unit of work for everything
/// downstream of gridding (CSV-ingested and simulated days have no prices).
struct ReturnPanel {
    Date date;
    std::vector<double> returns;
};

enum class DayReject {
    none,
    wrong_length,
    non_finite,
};

struct DayValidation {
    bool accepted = false;
    DayReject reason = DayReject::none;
};

const char* day_reject_name(DayReject reason);

/// Previous-tick resampling: the price at each grid instant is the last
/// observed price at or before it. Only ticks dated `date` participate;
/// a day with no price at or before the session open is rejected
/// (NoPriceBeforeOpen), never zero-filled.
DayGrid previous_tick_resample(const TickSeries& ticks, const GridSpec& spec, Date date);

/// output[i] = ln(prices[i+1] / prices[i]).
std::vector<double> log_returns(std::span<const double> prices);

/// Accept/reject decision; never throws.
DayValidation validate_day(std::span<const double> returns, int expected_returns) noexcept;
DayValidation validate_day(const ReturnPanel& panel, const GridSpec& spec) noexcept;
DayValidation validate_day(const DayGrid& day, const GridSpec& spec) noexcept;

} // namespace intravol
