#pragma once

#include "intravol/dates.hpp"
#include "intravol/realized_vol.hpp"

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <vector>

namespace intravol {

struct HarDesign {
    Eigen::VectorXd response;          // log RV_t
    Eigen::MatrixXd design;            // [1, log RV_{t-1}, weekly, monthly]
    std::vector<Date> dates;           // one per row
};

/// Volatility-cascade regression fit on log RV plus the decomposition into
/// predictable (fitted, sigma_p) and unexpected (residual, sigma_u) parts.
struct HarFit {
    double beta0 = 0.0;
    double beta_d = 0.0;
    double beta_w = 0.0;
    double beta_m = 0.0;
    std::array<double, 4> std_errors{}; // same order as the coefficients
    std::vector<Date> dates;
    std::vector<double> log_rv;    // response on the fitted dates
    std::vector<double> sigma_p;   // fitted values
    std::vector<double> sigma_u;   // residuals
    int n_obs = 0;

    /// Row index for a date, if the date is in the fitted sample.
    std::optional<std::size_t> index_of(Date date) const;
};

/// One row per day with a full 22-day history: response log RV_t against
/// [1, log RV_{t-1}, 5-day mean, 22-day mean] of lagged log RV.
HarDesign build_har_design(const RvSeries& series);

/// Ordinary least squares on the cascade design. Throws RankDeficient on
/// collinear designs (e.g. a constant series) rather than pseudo-inverting.
HarFit fit_har(const RvSeries& series);

} // namespace intravol
