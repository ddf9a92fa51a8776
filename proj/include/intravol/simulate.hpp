#pragma once

#include "intravol/grid.hpp"

#include <cstdint>
#include <vector>

namespace intravol {

/// Synthetic-market generator parameters. All generators are reproducible:
/// identical spec (including seed) yields bit-identical panels, and each
/// day draws from its own substream of (seed, day index).
struct SimSpec {
    enum class Model { iid_gaussian, ar1, har_cascade };

    Model model = Model::iid_gaussian;
    int days = 0;
    int returns_per_day = 84;
    std::uint64_t seed = 0;

    double sigma = 1.0; // per-return innovation sd (iid_gaussian, ar1)
    double phi = 0.0;   // ar1 coefficient, |phi| < 1

    // har_cascade: log-variance recursion coefficients and innovation sd
    double beta0 = 0.0;
    double beta_d = 0.0;
    double beta_w = 0.0;
    double beta_m = 0.0;
    double noise_sd = 0.0;

    void validate() const; // throws InvalidSpec
};

/// Weekday sequence starting 2000-01-03 used for all synthetic panels.
std::vector<Date> synthetic_dates(std::size_t days);

/// returns_per_day i.i.d. Normal(0, sigma) draws per day.
std::vector<ReturnPanel> gen_iid(const SimSpec& spec);

/// Within-day AR(1) with stationary initialization, independent days.
std::vector<ReturnPanel> gen_ar1(const SimSpec& spec);

struct HarCascadeOutput {
    std::vector<ReturnPanel> panels;
    std::vector<double> log_variance; // true daily log-variance path
};

/// Daily log-variance follows the three-horizon cascade recursion with
/// Gaussian innovations; intraday returns are i.i.d. Normal with per-day
/// variance exp(log-variance)/n. A 500-day burn-in is discarded.
HarCascadeOutput gen_har_cascade(const SimSpec& spec);

/// Dispatch on spec.model.
std::vector<ReturnPanel> generate_panels(const SimSpec& spec);

} // namespace intravol
