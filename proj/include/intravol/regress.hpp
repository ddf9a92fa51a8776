#pragma once

#include "intravol/daily_metrics.hpp"
#include "intravol/dates.hpp"
#include "intravol/har.hpp"
#include "intravol/ols.hpp"

#include <string>
#include <vector>

namespace intravol {

struct DateSeries {
    std::vector<Date> dates;
    std::vector<double> values;
};

struct RegressionResult {
    std::string spec_name; // simple | lagged | decomposed
    int q = 0;
    std::vector<std::string> names;
    std::vector<double> coefficients;
    std::vector<double> standard_errors;
    double adj_r2 = 0.0;
    int n_obs = 0;
};

/// VR_t = b + c * log RV_t. Inputs must cover identical date sets.
RegressionResult regression_simple(const DateSeries& vr, const DateSeries& log_rv,
                                   SeMode se_mode = SeMode::ols);

/// VR_t = b + c0 * log RV_t + c1 * log RV_{t-1}; the first day of the
/// aligned sample is dropped (its lag is unavailable).
RegressionResult regression_lagged(const DateSeries& vr, const DateSeries& log_rv,
                                   SeMode se_mode = SeMode::ols);

/// VR_t = b + coef_expected * sigma_p_t + coef_unexpected * sigma_u_t.
/// Every vr date must appear in the fitted sample.
RegressionResult regression_decomposed(const DateSeries& vr, const HarFit& har,
                                       SeMode se_mode = SeMode::ols);

enum class RegressionSpecKind { simple, lagged, decomposed };
const char* regression_spec_name(RegressionSpecKind spec);

enum class HarRefitMode { full_sample, per_window };

struct RollingWindow {
    Date window_end;
    RegressionResult result;
    std::vector<double> ci_low;  // coefficient - z * SE
    std::vector<double> ci_high; // coefficient + z * SE
};

struct RollingSeries {
    std::vector<RollingWindow> windows;
    int window_length_days = 0;
    double level = 0.95;
};

struct RollingOptions {
    int window_length = 1250; // "5 years" at 250 trading days/year
    double level = 0.95;
    SeMode se_mode = SeMode::ols;
    HarRefitMode har_refit = HarRefitMode::full_sample;
};

/// Full-sample estimate of one spec at one q, over the deterministic common
/// sample: days with a full lag and 22-day cascade history (row index >= 22
/// in the accepted-day sequence), so all specs share the same n_obs.
/// `har` is required for the decomposed spec (full-sample fit).
RegressionResult full_sample_regression(RegressionSpecKind spec,
                                        const DailyMetrics& metrics, int q,
                                        const HarFit* har,
                                        SeMode se_mode = SeMode::ols);

/// One regression per window position, stepping one trading day over the
/// accepted-day sequence (window count = days - window_length + 1). Within
/// each window the sample is the intersection with rows carrying all
/// regressors. With per_window refit the cascade model is re-estimated
/// inside every window (decomposed spec only).
RollingSeries rolling_regression(RegressionSpecKind spec, const DailyMetrics& metrics,
                                 int q, const HarFit* har, const RollingOptions& opts);

} // namespace intravol
