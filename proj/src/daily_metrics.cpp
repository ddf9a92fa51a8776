#include "intravol/daily_metrics.hpp"

#include "intravol/errors.hpp"
#include "intravol/realized_vol.hpp"
#include "intravol/vr_stats.hpp"

#include <cmath>

namespace intravol {

const std::vector<double>& DailyMetrics::vr_for(int q) const {
    for (std::size_t i = 0; i < q_levels.size(); ++i) {
        if (q_levels[i] == q) return vr[i];
    }
    throw Error(ErrorCode::invalid_spec,
                "no VR series for q=" + std::to_string(q));
}

DailyMetrics compute_daily_metrics(std::span<const ReturnPanel> panels,
                                   std::span<const int> q_levels,
                                   int expected_returns,
                                   std::vector<DayRejection>* rejections) {
    for (int q : q_levels) {
        if (q < 2 || 2 * q > expected_returns) {
            throw Error(ErrorCode::invalid_spec,
                        "q=" + std::to_string(q) + " outside 2.." +
                            std::to_string(expected_returns / 2));
        }
    }

    DailyMetrics out;
    out.q_levels.assign(q_levels.begin(), q_levels.end());
    out.vr.resize(q_levels.size());

    for (const ReturnPanel& panel : panels) {
        if (!out.dates.empty() && !(panel.date > out.dates.back())) {
            throw Error(ErrorCode::unordered_timestamps,
                        "panels not in strictly increasing date order at " +
                            panel.date.to_string());
        }
        const DayValidation v = validate_day(panel.returns, expected_returns);
        if (!v.accepted) {
            if (rejections) rejections->push_back({panel.date, day_reject_name(v.reason)});
            continue;
        }
        std::vector<double> day_vr(q_levels.size());
        bool degenerate = false;
        for (std::size_t i = 0; i < q_levels.size(); ++i) {
            try {
                day_vr[i] = variance_ratio(panel.returns, out.q_levels[i]).vr;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::degenerate_day) throw;
                degenerate = true;
                break;
            }
        }
        if (degenerate) {
            if (rejections) rejections->push_back({panel.date, "DegenerateDay"});
            continue;
        }
        out.dates.push_back(panel.date);
        out.log_rv.push_back(std::log(realized_variance(panel.returns)));
        for (std::size_t i = 0; i < q_levels.size(); ++i) {
            out.vr[i].push_back(day_vr[i]);
        }
    }
    return out;
}

} // namespace intravol
