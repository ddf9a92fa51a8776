#include "intravol/har.hpp"

#include "intravol/errors.hpp"
#include "intravol/ols.hpp"

#include <algorithm>
#include <string>

namespace intravol {

std::optional<std::size_t> HarFit::index_of(Date date) const {
    auto it = std::lower_bound(dates.begin(), dates.end(), date);
    if (it == dates.end() || *it != date) return std::nullopt;
    return static_cast<std::size_t>(it - dates.begin());
}

HarDesign build_har_design(const RvSeries& series) {
    const std::size_t len = series.size();
    if (len < static_cast<std::size_t>(kMonthlyHorizon) + 1) {
        throw Error(ErrorCode::insufficient_history,
                    "need at least " + std::to_string(kMonthlyHorizon + 1) +
                        " days, got " + std::to_string(len));
    }
    const std::size_t rows = len - kMonthlyHorizon;

    HarDesign out;
    out.response.resize(static_cast<Eigen::Index>(rows));
    out.design.resize(static_cast<Eigen::Index>(rows), 4);
    out.dates.reserve(rows);
    for (std::size_t t = kMonthlyHorizon; t < len; ++t) {
        const auto row = static_cast<Eigen::Index>(t - kMonthlyHorizon);
        out.response(row) = series[t].log_rv;
        out.design(row, 0) = 1.0;
        out.design(row, 1) = series[t - 1].log_rv;
        out.design(row, 2) = heterogeneous_average(series, t, kWeeklyHorizon);
        out.design(row, 3) = heterogeneous_average(series, t, kMonthlyHorizon);
        out.dates.push_back(series[t].date);
    }
    return out;
}

HarFit fit_har(const RvSeries& series) {
    HarDesign d = build_har_design(series);
    if (d.response.size() < 5) {
        throw Error(ErrorCode::too_few_rows,
                    "cascade fit needs at least 5 usable days");
    }
    OlsFit fit = ols(d.response, d.design);

    HarFit out;
    out.beta0 = fit.coefficients(0);
    out.beta_d = fit.coefficients(1);
    out.beta_w = fit.coefficients(2);
    out.beta_m = fit.coefficients(3);
    for (int i = 0; i < 4; ++i) out.std_errors[static_cast<std::size_t>(i)] = fit.standard_errors(i);
    out.dates = std::move(d.dates);
    out.n_obs = fit.n_obs;

    const auto rows = static_cast<std::size_t>(d.response.size());
    out.log_rv.resize(rows);
    out.sigma_p.resize(rows);
    out.sigma_u.resize(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        out.log_rv[i] = d.response(row);
        out.sigma_u[i] = fit.residuals(row);
        out.sigma_p[i] = d.response(row) - fit.residuals(row);
    }
    return out;
}

} // namespace intravol
