#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace intravol {

/// Neumaier-compensated accumulator. Monte Carlo suites push millions of
/// terms through these sums; the compensation keeps them order-stable.
class CompensatedSum {
public:
    void add(double x) noexcept {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) noexcept {
    CompensatedSum acc;
    for (double x : xs) acc.add(x);
    return acc.value();
}

/// Inverse standard-normal CDF, Acklam's rational approximation
/// (|relative error| < 1.15e-9 over (0,1)). Pure polynomial evaluation,
/// so results are identical across platforms and libms.
double normal_quantile(double p);

} // namespace intravol
