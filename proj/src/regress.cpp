#include "intravol/regress.hpp"

#include "intravol/errors.hpp"
#include "intravol/numeric.hpp"

#include <algorithm>
#include <span>
#include <string>
#include <utility>

namespace intravol {

namespace {

constexpr std::size_t kBurnIn = kMonthlyHorizon; // lag + cascade history

void require_aligned(const DateSeries& a, const DateSeries& b) {
    if (a.dates.size() != a.values.size() || b.dates.size() != b.values.size()) {
        throw Error(ErrorCode::alignment_error, "series dates/values lengths differ");
    }
    if (a.dates != b.dates) {
        throw Error(ErrorCode::alignment_error, "date sets differ between series");
    }
}

void require_min_rows(std::size_t n) {
    if (n < 10) {
        throw Error(ErrorCode::too_few_rows,
                    "regression needs at least 10 observations, got " +
                        std::to_string(n));
    }
}

RegressionResult assemble(std::string spec_name, std::vector<std::string> names,
                          const OlsFit& fit) {
    RegressionResult out;
    out.spec_name = std::move(spec_name);
    out.names = std::move(names);
    out.coefficients.assign(fit.coefficients.begin(), fit.coefficients.end());
    out.standard_errors.assign(fit.standard_errors.begin(),
                               fit.standard_errors.end());
    out.adj_r2 = fit.adj_r2;
    out.n_obs = fit.n_obs;
    return out;
}

DateSeries slice_series(const std::vector<Date>& dates,
                        const std::vector<double>& values, std::size_t lo,
                        std::size_t hi) {
    DateSeries out;
    out.dates.assign(dates.begin() + static_cast<std::ptrdiff_t>(lo),
                     dates.begin() + static_cast<std::ptrdiff_t>(hi));
    out.values.assign(values.begin() + static_cast<std::ptrdiff_t>(lo),
                      values.begin() + static_cast<std::ptrdiff_t>(hi));
    return out;
}

int non_intercept_regressors(RegressionSpecKind spec) {
    return spec == RegressionSpecKind::simple ? 1 : 2;
}

RegressionResult run_spec(RegressionSpecKind spec, const DailyMetrics& metrics,
                          int q, const HarFit* har, std::size_t lo, std::size_t hi,
                          SeMode se_mode) {
    const std::vector<double>& vr = metrics.vr_for(q);
    RegressionResult result;
    switch (spec) {
        case RegressionSpecKind::simple:
            result = regression_simple(slice_series(metrics.dates, vr, lo, hi),
                                       slice_series(metrics.dates, metrics.log_rv, lo, hi),
                                       se_mode);
            break;
        case RegressionSpecKind::lagged:
            // pass one extra leading row; the op drops it as the lag source
            result = regression_lagged(slice_series(metrics.dates, vr, lo - 1, hi),
                                       slice_series(metrics.dates, metrics.log_rv, lo - 1, hi),
                                       se_mode);
            break;
        case RegressionSpecKind::decomposed:
            if (har == nullptr) {
                throw Error(ErrorCode::invalid_spec,
                            "decomposed regression needs a fitted cascade model");
            }
            result = regression_decomposed(slice_series(metrics.dates, vr, lo, hi),
                                           *har, se_mode);
            break;
    }
    result.q = q;
    return result;
}

} // namespace

const char* regression_spec_name(RegressionSpecKind spec) {
    switch (spec) {
        case RegressionSpecKind::simple: return "simple";
        case RegressionSpecKind::lagged: return "lagged";
        case RegressionSpecKind::decomposed: return "decomposed";
    }
    return "unknown";
}

RegressionResult regression_simple(const DateSeries& vr, const DateSeries& log_rv,
                                   SeMode se_mode) {
    require_aligned(vr, log_rv);
    const std::size_t n = vr.values.size();
    require_min_rows(n);

    Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(
        vr.values.data(), static_cast<Eigen::Index>(n));
    Eigen::MatrixXd x(static_cast<Eigen::Index>(n), 2);
    x.col(0).setOnes();
    x.col(1) = Eigen::Map<const Eigen::VectorXd>(log_rv.values.data(),
                                                 static_cast<Eigen::Index>(n));
    return assemble("simple", {"b", "c"}, ols(y, x, se_mode));
}

RegressionResult regression_lagged(const DateSeries& vr, const DateSeries& log_rv,
                                   SeMode se_mode) {
    require_aligned(vr, log_rv);
    if (vr.values.size() < 2) {
        throw Error(ErrorCode::too_few_rows, "lagged regression needs >= 2 days");
    }
    const std::size_t n = vr.values.size() - 1; // first day has no lag
    require_min_rows(n);

    Eigen::VectorXd y(static_cast<Eigen::Index>(n));
    Eigen::MatrixXd x(static_cast<Eigen::Index>(n), 3);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        y(row) = vr.values[i + 1];
        x(row, 0) = 1.0;
        x(row, 1) = log_rv.values[i + 1];
        x(row, 2) = log_rv.values[i];
    }
    return assemble("lagged", {"b", "c0", "c1"}, ols(y, x, se_mode));
}

RegressionResult regression_decomposed(const DateSeries& vr, const HarFit& har,
                                       SeMode se_mode) {
    if (vr.dates.size() != vr.values.size()) {
        throw Error(ErrorCode::alignment_error, "series dates/values lengths differ");
    }
    const std::size_t n = vr.values.size();
    require_min_rows(n);

    Eigen::VectorXd y(static_cast<Eigen::Index>(n));
    Eigen::MatrixXd x(static_cast<Eigen::Index>(n), 3);
    for (std::size_t i = 0; i < n; ++i) {
        const auto idx = har.index_of(vr.dates[i]);
        if (!idx) {
            throw Error(ErrorCode::alignment_error,
                        vr.dates[i].to_string() + " is not in the fitted sample");
        }
        const auto row = static_cast<Eigen::Index>(i);
        y(row) = vr.values[i];
        x(row, 0) = 1.0;
        x(row, 1) = har.sigma_p[*idx];
        x(row, 2) = har.sigma_u[*idx];
    }
    return assemble("decomposed", {"b", "coef_expected", "coef_unexpected"},
                    ols(y, x, se_mode));
}

RegressionResult full_sample_regression(RegressionSpecKind spec,
                                        const DailyMetrics& metrics, int q,
                                        const HarFit* har, SeMode se_mode) {
    const std::size_t n = metrics.size();
    if (n <= kBurnIn) {
        throw Error(ErrorCode::insufficient_history,
                    "need more than " + std::to_string(kBurnIn) + " accepted days");
    }
    return run_spec(spec, metrics, q, har, kBurnIn, n, se_mode);
}

RollingSeries rolling_regression(RegressionSpecKind spec, const DailyMetrics& metrics,
                                 int q, const HarFit* har, const RollingOptions& opts) {
    const std::size_t n = metrics.size();
    const auto w = static_cast<std::size_t>(opts.window_length);
    if (opts.window_length <= non_intercept_regressors(spec) + 2) {
        throw Error(ErrorCode::invalid_spec, "window length too small for spec");
    }
    if (!(opts.level > 0.0 && opts.level < 1.0)) {
        throw Error(ErrorCode::invalid_spec, "confidence level must be in (0,1)");
    }
    if (n < w) {
        throw Error(ErrorCode::series_too_short,
                    std::to_string(n) + " days < window of " + std::to_string(w));
    }

    const double z = normal_quantile(0.5 + opts.level / 2.0);
    RollingSeries out;
    out.window_length_days = opts.window_length;
    out.level = opts.level;
    out.windows.reserve(n - w + 1);

    for (std::size_t k = 0; k + w <= n; ++k) {
        const std::size_t hi = k + w;
        RollingWindow window;
        window.window_end = metrics.dates[hi - 1];

        if (spec == RegressionSpecKind::decomposed &&
            opts.har_refit == HarRefitMode::per_window) {
            const RvSeries window_series = RvSeries::from_log_rv(
                std::span(metrics.dates).subspan(k, w),
                std::span(metrics.log_rv).subspan(k, w));
            const HarFit window_fit = fit_har(window_series);
            window.result = run_spec(spec, metrics, q, &window_fit, k + kBurnIn, hi,
                                     opts.se_mode);
        } else {
            const std::size_t lo = std::max(k, kBurnIn);
            window.result = run_spec(spec, metrics, q, har, lo, hi, opts.se_mode);
        }

        window.ci_low.resize(window.result.coefficients.size());
        window.ci_high.resize(window.result.coefficients.size());
        for (std::size_t j = 0; j < window.result.coefficients.size(); ++j) {
            const double half = z * window.result.standard_errors[j];
            window.ci_low[j] = window.result.coefficients[j] - half;
            window.ci_high[j] = window.result.coefficients[j] + half;
        }
        out.windows.push_back(std::move(window));
    }
    return out;
}

} // namespace intravol
