#include "intravol/simulate.hpp"

#include "intravol/errors.hpp"
#include "intravol/realized_vol.hpp"
#include "intravol/vr_stats.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace intravol;

namespace {

SimSpec iid_spec(int days, std::uint64_t seed, double sigma = 1.0) {
    SimSpec s;
    s.model = SimSpec::Model::iid_gaussian;
    s.days = days;
    s.seed = seed;
    s.sigma = sigma;
    return s;
}

SimSpec ar1_spec(int days, std::uint64_t seed, double phi) {
    SimSpec s;
    s.model = SimSpec::Model::ar1;
    s.days = days;
    s.seed = seed;
    s.phi = phi;
    return s;
}

SimSpec cascade_spec(int days, std::uint64_t seed, double noise_sd = 0.3) {
    SimSpec s;
    s.model = SimSpec::Model::har_cascade;
    s.days = days;
    s.seed = seed;
    s.beta0 = 0.1;
    s.beta_d = 0.4;
    s.beta_w = 0.3;
    s.beta_m = 0.2;
    s.noise_sd = noise_sd;
    return s;
}

// pooled non-demeaned lag-1 autocorrelation; the generators draw from a
// known zero-mean process, so no per-day mean is estimated (a per-day
// demeaned estimator would carry an O(1/n) bias)
double pooled_lag1_autocorr(const std::vector<ReturnPanel>& panels) {
    long double num = 0.0L, den = 0.0L;
    for (const auto& p : panels) {
        for (std::size_t i = 0; i < p.returns.size(); ++i) {
            if (i > 0) num += static_cast<long double>(p.returns[i]) * p.returns[i - 1];
            den += static_cast<long double>(p.returns[i]) * p.returns[i];
        }
    }
    return static_cast<double>(num / den);
}

bool identical_panels(const std::vector<ReturnPanel>& a,
                      const std::vector<ReturnPanel>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].date != b[i].date || a[i].returns != b[i].returns) return false;
    }
    return true;
}

} // namespace

TEST_CASE("synthetic calendar starts 2000-01-03 and skips weekends") {
    const auto dates = synthetic_dates(10);
    CHECK(dates.front() == Date::from_ymd(2000, 1, 3));
    CHECK(dates[4] == Date::from_ymd(2000, 1, 7));  // Friday
    CHECK(dates[5] == Date::from_ymd(2000, 1, 10)); // next Monday
    for (const Date& d : dates) CHECK_FALSE(d.is_weekend());
}

TEST_CASE("generators are deterministic given the spec") {
    CHECK(identical_panels(gen_iid(iid_spec(50, 777)), gen_iid(iid_spec(50, 777))));
    CHECK(identical_panels(gen_ar1(ar1_spec(50, 777, 0.4)),
                           gen_ar1(ar1_spec(50, 777, 0.4))));
    const auto a = gen_har_cascade(cascade_spec(50, 777));
    const auto b = gen_har_cascade(cascade_spec(50, 777));
    CHECK(identical_panels(a.panels, b.panels));
    CHECK(a.log_variance == b.log_variance);

    CHECK_FALSE(identical_panels(gen_iid(iid_spec(50, 777)), gen_iid(iid_spec(50, 778))));
}

TEST_CASE("zero sigma collapses to all-zero returns") {
    const auto panels = gen_iid(iid_spec(5, 3, 0.0));
    for (const auto& p : panels) {
        for (double r : p.returns) CHECK(r == 0.0);
    }
}

TEST_CASE("iid panels have pooled lag-1 autocorrelation near zero") {
    const auto panels = gen_iid(iid_spec(100000, 8811));
    const double rho = pooled_lag1_autocorr(panels);
    CHECK(std::abs(rho) <= 9.0 / std::sqrt(100000.0 * 84.0));
}

TEST_CASE("ar1 with phi = 0 reduces to the iid generator bit for bit") {
    CHECK(identical_panels(gen_ar1(ar1_spec(200, 42, 0.0)), gen_iid(iid_spec(200, 42))));
}

TEST_CASE("ar1 pooled autocorrelation tracks phi") {
    const auto panels = gen_ar1(ar1_spec(100000, 90210, 0.3));
    CHECK(std::abs(pooled_lag1_autocorr(panels) - 0.3) <= 0.01);
}

TEST_CASE("extreme negative phi drives VR toward the alternating limit") {
    const auto panels = gen_ar1(ar1_spec(2000, 5125, -0.99));
    double total = 0.0;
    for (const auto& p : panels) total += variance_ratio(p.returns, 2).vr;
    const double mean_vr = total / static_cast<double>(panels.size());
    CHECK(mean_vr < 0.5); // alternating-case limit is 0; iid null is ~1
}

TEST_CASE("cascade log-variance settles near its fixed point as noise vanishes") {
    const auto out = gen_har_cascade(cascade_spec(50, 9, 1e-9));
    const double fp = 0.1 / (1.0 - 0.4 - 0.3 - 0.2);
    for (double lv : out.log_variance) {
        CHECK(lv == doctest::Approx(fp).epsilon(1e-6));
    }
}

TEST_CASE("cascade realized variance is consistent with the generated level") {
    const auto out = gen_har_cascade(cascade_spec(10000, 2718));
    long double rv_total = 0.0L, level_total = 0.0L;
    for (std::size_t d = 0; d < out.panels.size(); ++d) {
        rv_total += realized_variance(out.panels[d].returns);
        level_total += std::exp(out.log_variance[d]);
    }
    const double ratio = static_cast<double>(rv_total / level_total);
    CHECK(ratio == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("cascade log RV autocorrelation stays positive out to lag 50") {
    const auto out = gen_har_cascade(cascade_spec(10000, 31415));
    const auto& lv = out.log_variance;
    long double mu = 0.0L;
    for (double x : lv) mu += x;
    mu /= static_cast<long double>(lv.size());
    long double var = 0.0L;
    for (double x : lv) var += (x - mu) * (x - mu);
    for (int lag : {1, 5, 10, 25, 50}) {
        long double cov = 0.0L;
        for (std::size_t t = static_cast<std::size_t>(lag); t < lv.size(); ++t) {
            cov += (lv[t] - mu) * (lv[t - static_cast<std::size_t>(lag)] - mu);
        }
        CHECK(static_cast<double>(cov / var) > 0.0);
    }
}

TEST_CASE("invalid specs are rejected") {
    CHECK_THROWS_AS(gen_iid(iid_spec(0, 1)), Error);
    SimSpec bad_sigma = iid_spec(10, 1, -1.0);
    CHECK_THROWS_AS(gen_iid(bad_sigma), Error);
    CHECK_THROWS_AS(gen_ar1(ar1_spec(10, 1, 1.0)), Error);
    CHECK_THROWS_AS(gen_ar1(ar1_spec(10, 1, -1.5)), Error);

    SimSpec no_noise = cascade_spec(10, 1, 0.0);
    CHECK_THROWS_AS(gen_har_cascade(no_noise), Error);
    SimSpec nonstationary = cascade_spec(10, 1);
    nonstationary.beta_m = 0.4; // coefficients sum to 1.1
    CHECK_THROWS_AS(gen_har_cascade(nonstationary), Error);

    // dispatch rejects mismatched model tags
    CHECK_THROWS_AS(gen_iid(ar1_spec(10, 1, 0.2)), Error);
}
