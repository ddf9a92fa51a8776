#include "intravol/har.hpp"

#include "intravol/errors.hpp"
#include "intravol/ols.hpp"
#include "intravol/simulate.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace intravol;

namespace {

RvSeries series_from_log_rv(const std::vector<double>& log_rv) {
    std::vector<Date> dates;
    for (std::size_t i = 0; i < log_rv.size(); ++i) {
        dates.push_back(Date(11000 + static_cast<std::int32_t>(i)));
    }
    return RvSeries::from_log_rv(dates, log_rv);
}

// zero-innovation cascade recursion from a seeded 22-day history; the
// response is an exact linear function of its own lags, so a correct fit
// recovers the coefficients to rounding error
std::vector<double> noiseless_cascade_path(double b0, double bd, double bw, double bm,
                                           unsigned seed, std::size_t total) {
    std::vector<double> path = oracles::seeded_normals(seed, 22);
    const double fp = b0 / (1.0 - bd - bw - bm);
    for (double& x : path) x += fp;
    while (path.size() < total) {
        const std::size_t e = path.size();
        double wk = 0.0, mo = 0.0;
        for (std::size_t k = e - 5; k < e; ++k) wk += path[k];
        for (std::size_t k = e - 22; k < e; ++k) mo += path[k];
        path.push_back(b0 + bd * path[e - 1] + bw * wk / 5.0 + bm * mo / 22.0);
    }
    return path;
}

RvSeries cascade_series(const HarCascadeOutput& sim) {
    return series_from_log_rv(sim.log_variance);
}

} // namespace

TEST_CASE("design matrix: boundary, constant rows, lag oracle") {
    const auto boundary = series_from_log_rv(oracles::seeded_normals(41, 23));
    const HarDesign d1 = build_har_design(boundary);
    CHECK(d1.response.size() == 1);
    CHECK(d1.dates.size() == 1);

    const auto constant = series_from_log_rv(std::vector<double>(30, -8.25));
    const HarDesign dc = build_har_design(constant);
    for (Eigen::Index r = 0; r < dc.design.rows(); ++r) {
        CHECK(dc.design(r, 0) == 1.0);
        CHECK(dc.design(r, 1) == doctest::Approx(-8.25).epsilon(1e-15));
        CHECK(dc.design(r, 2) == doctest::Approx(-8.25).epsilon(1e-15));
        CHECK(dc.design(r, 3) == doctest::Approx(-8.25).epsilon(1e-15));
    }

    const auto log_rv = oracles::seeded_normals(42, 100);
    const HarDesign d = build_har_design(series_from_log_rv(log_rv));
    REQUIRE(d.response.size() == 78);
    for (Eigen::Index r = 0; r < d.design.rows(); ++r) {
        const std::size_t t = static_cast<std::size_t>(r) + 22;
        CHECK(d.response(r) == log_rv[t]);
        CHECK(d.design(r, 1) == log_rv[t - 1]);
        long double wk = 0.0L, mo = 0.0L;
        for (std::size_t k = t - 5; k < t; ++k) wk += log_rv[k];
        for (std::size_t k = t - 22; k < t; ++k) mo += log_rv[k];
        CHECK(d.design(r, 2) ==
              doctest::Approx(static_cast<double>(wk / 5.0L)).epsilon(1e-14));
        CHECK(d.design(r, 3) ==
              doctest::Approx(static_cast<double>(mo / 22.0L)).epsilon(1e-14));
    }

    CHECK_THROWS_AS(build_har_design(series_from_log_rv(oracles::seeded_normals(43, 22))),
                    Error);
}

TEST_CASE("noiseless recursion is recovered exactly") {
    const auto path = noiseless_cascade_path(0.1, 0.4, 0.3, 0.2, 44, 60);
    const HarFit fit = fit_har(series_from_log_rv(path));
    CHECK(fit.beta0 == doctest::Approx(0.1).epsilon(1e-8));
    CHECK(fit.beta_d == doctest::Approx(0.4).epsilon(1e-8));
    CHECK(fit.beta_w == doctest::Approx(0.3).epsilon(1e-8));
    CHECK(fit.beta_m == doctest::Approx(0.2).epsilon(1e-8));
    CHECK(fit.n_obs == 38);
}

TEST_CASE("constant series is rank deficient, never pseudo-inverted") {
    const auto constant = series_from_log_rv(std::vector<double>(60, -9.0));
    try {
        fit_har(constant);
        FAIL("expected RankDeficient");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::rank_deficient);
    }
}

TEST_CASE("monte carlo: generator coefficients recovered within 3 SE") {
    SimSpec spec;
    spec.model = SimSpec::Model::har_cascade;
    spec.days = 10000;
    spec.seed = 4455;
    spec.beta0 = 0.1;
    spec.beta_d = 0.4;
    spec.beta_w = 0.3;
    spec.beta_m = 0.2;
    spec.noise_sd = 0.3;
    const HarFit fit = fit_har(cascade_series(gen_har_cascade(spec)));

    const double truth[4] = {0.1, 0.4, 0.3, 0.2};
    const double est[4] = {fit.beta0, fit.beta_d, fit.beta_w, fit.beta_m};
    for (int i = 0; i < 4; ++i) {
        const double se = fit.std_errors[static_cast<std::size_t>(i)];
        CHECK(se > 0.0);
        CHECK(std::abs(est[i] - truth[i]) < 3.0 * se);
    }
}

TEST_CASE("decomposition identities on a simulated sample") {
    SimSpec spec;
    spec.model = SimSpec::Model::har_cascade;
    spec.days = 800;
    spec.seed = 4456;
    spec.beta0 = 0.1;
    spec.beta_d = 0.4;
    spec.beta_w = 0.3;
    spec.beta_m = 0.2;
    spec.noise_sd = 0.3;
    const RvSeries series = cascade_series(gen_har_cascade(spec));
    const HarFit fit = fit_har(series);
    const std::size_t n = fit.dates.size();
    REQUIRE(n == 778);
    CHECK(fit.n_obs == 778);

    // sigma_p + sigma_u reassembles log RV day by day
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(fit.sigma_p[i] + fit.sigma_u[i] - fit.log_rv[i]) <= 1e-10);
    }

    // residuals average to zero (intercept present)
    long double mean_u = 0.0L, var_u = 0.0L;
    for (double u : fit.sigma_u) mean_u += u;
    mean_u /= static_cast<long double>(n);
    for (double u : fit.sigma_u) var_u += (u - mean_u) * (u - mean_u);
    const long double sd_u = std::sqrt(var_u / static_cast<long double>(n - 1));
    CHECK(std::abs(static_cast<double>(mean_u)) <= 1e-10 * static_cast<double>(sd_u));

    // residuals orthogonal to every design column
    const HarDesign d = build_har_design(series);
    long double res_norm2 = 0.0L;
    for (double u : fit.sigma_u) res_norm2 += u * u;
    for (int col = 0; col < 4; ++col) {
        long double dot = 0.0L, norm2 = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            dot += d.design(static_cast<Eigen::Index>(i), col) * fit.sigma_u[i];
            norm2 += d.design(static_cast<Eigen::Index>(i), col) *
                     d.design(static_cast<Eigen::Index>(i), col);
        }
        CHECK(std::abs(static_cast<double>(dot)) <=
              1e-8 * std::sqrt(static_cast<double>(norm2)) *
                  std::sqrt(static_cast<double>(res_norm2)));
    }

    // variance splits orthogonally: Var(sigma_u) = Var(log RV) - Var(sigma_p)
    auto sample_var = [](const std::vector<double>& xs) {
        long double mu = 0.0L;
        for (double x : xs) mu += x;
        mu /= static_cast<long double>(xs.size());
        long double s = 0.0L;
        for (double x : xs) s += (x - mu) * (x - mu);
        return static_cast<double>(s / static_cast<long double>(xs.size() - 1));
    };
    const double var_y = sample_var(fit.log_rv);
    const double var_p = sample_var(fit.sigma_p);
    const double var_u2 = sample_var(fit.sigma_u);
    CHECK(var_u2 == doctest::Approx(var_y - var_p).epsilon(1e-8));
}

TEST_CASE("refitting on the fitted values reproduces the coefficients") {
    SimSpec spec;
    spec.model = SimSpec::Model::har_cascade;
    spec.days = 400;
    spec.seed = 4457;
    spec.beta0 = 0.05;
    spec.beta_d = 0.45;
    spec.beta_w = 0.25;
    spec.beta_m = 0.2;
    spec.noise_sd = 0.25;
    const RvSeries series = cascade_series(gen_har_cascade(spec));
    const HarFit first = fit_har(series);

    // same regressors, fitted values as the response: zero-noise
    // self-consistency returns the identical coefficient vector
    const HarDesign d = build_har_design(series);
    Eigen::VectorXd fitted(d.response.size());
    for (Eigen::Index i = 0; i < d.response.size(); ++i) {
        fitted(i) = first.sigma_p[static_cast<std::size_t>(i)];
    }
    const OlsFit refit = ols(fitted, d.design);
    CHECK(refit.coefficients(0) == doctest::Approx(first.beta0).epsilon(1e-10));
    CHECK(refit.coefficients(1) == doctest::Approx(first.beta_d).epsilon(1e-10));
    CHECK(refit.coefficients(2) == doctest::Approx(first.beta_w).epsilon(1e-10));
    CHECK(refit.coefficients(3) == doctest::Approx(first.beta_m).epsilon(1e-10));
}

TEST_CASE("too little usable history is rejected") {
    CHECK_THROWS_AS(fit_har(series_from_log_rv(oracles::seeded_normals(45, 24))), Error);
}
