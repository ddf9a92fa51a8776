#include "intravol/simulate.hpp"

#include "intravol/errors.hpp"
#include "intravol/rng.hpp"

#include <cmath>
#include <string>

namespace intravol {

namespace {

constexpr int kBurnInDays = 500;

void require(bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::invalid_spec, what);
}

} // namespace

void SimSpec::validate() const {
    require(days >= 1, "days must be >= 1");
    require(returns_per_day >= 1, "returns_per_day must be >= 1");
    switch (model) {
        case Model::iid_gaussian:
            require(sigma >= 0.0, "sigma must be >= 0");
            break;
        case Model::ar1:
            require(sigma >= 0.0, "sigma must be >= 0");
            require(std::abs(phi) < 1.0, "ar1 needs |phi| < 1");
            break;
        case Model::har_cascade:
            require(beta_d + beta_w + beta_m < 1.0,
                    "cascade needs beta_d + beta_w + beta_m < 1");
            require(noise_sd > 0.0, "cascade needs noise_sd > 0");
            break;
    }
}

std::vector<Date> synthetic_dates(std::size_t days) {
    std::vector<Date> out;
    out.reserve(days);
    Date d = Date::from_ymd(2000, 1, 3);
    while (out.size() < days) {
        if (!d.is_weekend()) out.push_back(d);
        d = d.next_day();
    }
    return out;
}

std::vector<ReturnPanel> gen_iid(const SimSpec& spec) {
    spec.validate();
    require(spec.model == SimSpec::Model::iid_gaussian, "spec.model is not iid_gaussian");
    const auto dates = synthetic_dates(static_cast<std::size_t>(spec.days));
    std::vector<ReturnPanel> panels(static_cast<std::size_t>(spec.days));
    for (std::size_t d = 0; d < panels.size(); ++d) {
        RandomStream rs = RandomStream::substream(spec.seed, d);
        panels[d].date = dates[d];
        panels[d].returns.resize(static_cast<std::size_t>(spec.returns_per_day));
        for (double& r : panels[d].returns) r = spec.sigma * rs.normal();
    }
    return panels;
}

std::vector<ReturnPanel> gen_ar1(const SimSpec& spec) {
    spec.validate();
    require(spec.model == SimSpec::Model::ar1, "spec.model is not ar1");
    const auto dates = synthetic_dates(static_cast<std::size_t>(spec.days));
    const double stationary_scale = 1.0 / std::sqrt(1.0 - spec.phi * spec.phi);
    std::vector<ReturnPanel> panels(static_cast<std::size_t>(spec.days));
    for (std::size_t d = 0; d < panels.size(); ++d) {
        RandomStream rs = RandomStream::substream(spec.seed, d);
        panels[d].date = dates[d];
        auto& r = panels[d].returns;
        r.resize(static_cast<std::size_t>(spec.returns_per_day));
        r[0] = spec.sigma * stationary_scale * rs.normal();
        for (std::size_t i = 1; i < r.size(); ++i) {
            r[i] = spec.phi * r[i - 1] + spec.sigma * rs.normal();
        }
    }
    return panels;
}

HarCascadeOutput gen_har_cascade(const SimSpec& spec) {
    spec.validate();
    require(spec.model == SimSpec::Model::har_cascade, "spec.model is not har_cascade");
    const auto dates = synthetic_dates(static_cast<std::size_t>(spec.days));
    const double n = spec.returns_per_day;
    const double fixed_point =
        spec.beta0 / (1.0 - spec.beta_d - spec.beta_w - spec.beta_m);

    HarCascadeOutput out;
    out.panels.resize(static_cast<std::size_t>(spec.days));
    out.log_variance.resize(static_cast<std::size_t>(spec.days));

    std::vector<double> path;
    path.reserve(static_cast<std::size_t>(kBurnInDays + spec.days) + 22);
    path.assign(22, fixed_point); // flat pre-history, burn-in washes it out

    const int total = kBurnInDays + spec.days;
    for (int t = 0; t < total; ++t) {
        RandomStream rs = RandomStream::substream(spec.seed, static_cast<std::uint64_t>(t));
        const std::size_t end = path.size();
        double weekly = 0.0, monthly = 0.0;
        for (std::size_t k = end - 5; k < end; ++k) weekly += path[k];
        for (std::size_t k = end - 22; k < end; ++k) monthly += path[k];
        const double lv = spec.beta0 + spec.beta_d * path[end - 1] +
                          spec.beta_w * weekly / 5.0 + spec.beta_m * monthly / 22.0 +
                          spec.noise_sd * rs.normal();
        path.push_back(lv);
        if (t < kBurnInDays) continue;

        const auto d = static_cast<std::size_t>(t - kBurnInDays);
        out.log_variance[d] = lv;
        out.panels[d].date = dates[d];
        auto& r = out.panels[d].returns;
        r.resize(static_cast<std::size_t>(spec.returns_per_day));
        const double sd = std::sqrt(std::exp(lv) / n);
        for (double& x : r) x = sd * rs.normal();
    }
    return out;
}

std::vector<ReturnPanel> generate_panels(const SimSpec& spec) {
    switch (spec.model) {
        case SimSpec::Model::iid_gaussian: return gen_iid(spec);
        case SimSpec::Model::ar1: return gen_ar1(spec);
        case SimSpec::Model::har_cascade: return gen_har_cascade(spec).panels;
    }
    throw Error(ErrorCode::invalid_spec, "unknown simulation model");
}

} // namespace intravol
