#include "intravol/vr_stats.hpp"

#include "intravol/errors.hpp"
#include "intravol/numeric.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <string>

namespace intravol {

double sample_mean(std::span<const double> returns) {
    if (returns.empty()) {
        throw Error(ErrorCode::empty_input, "sample_mean of empty series");
    }
    return compensated_sum(returns) / static_cast<double>(returns.size());
}

double variance_a(std::span<const double> returns) {
    const std::size_t n = returns.size();
    if (n < 2) {
        throw Error(ErrorCode::too_short, "variance needs at least 2 observations");
    }
    const double mu = sample_mean(returns);
    CompensatedSum acc;
    for (double r : returns) {
        const double d = r - mu;
        acc.add(d * d);
    }
    return acc.value() / static_cast<double>(n - 1);
}

OverlappedVariance variance_c(std::span<const double> returns, int q) {
    const int n = static_cast<int>(returns.size());
    if (q < 1) {
        throw Error(ErrorCode::invalid_spec, "aggregation level q must be >= 1");
    }
    if (n < 2 * q) {
        throw Error(ErrorCode::too_short,
                    "need n >= 2q observations (n=" + std::to_string(n) +
                        ", q=" + std::to_string(q) + ")");
    }
    const double mu = sample_mean(returns);

    // sum_{j in window}(r_j - mu) == window sum - q*mu, but cancels the mean
    // term by term; constant series come out exactly zero.
    CompensatedSum acc;
    for (int k = q; k <= n; ++k) {
        double dev = 0.0;
        for (int j = k - q; j < k; ++j) {
            dev += returns[static_cast<std::size_t>(j)] - mu;
        }
        acc.add(dev * dev);
    }

    OverlappedVariance out;
    out.m = static_cast<double>(q) * static_cast<double>(n - q + 1) *
            (1.0 - static_cast<double>(q) / static_cast<double>(n));
    out.sigma_c2 = acc.value() / out.m;
    return out;
}

double dirichlet_kernel(int k, double lambda) {
    if (k < 1) {
        throw Error(ErrorCode::invalid_spec, "kernel order k must be >= 1");
    }
    const double s = std::sin(lambda / 2.0);
    if (s == 0.0) {
        throw Error(ErrorCode::singular_lambda,
                    "kernel undefined at lambda = " + std::to_string(lambda));
    }
    const double t = std::sin(static_cast<double>(k) * lambda / 2.0);
    return (t * t) / (s * s) / static_cast<double>(k);
}

double beta_exponent(int n, int q) {
    if (n < 3) {
        throw Error(ErrorCode::too_short, "beta exponent needs n >= 3");
    }
    if (q < 1) {
        throw Error(ErrorCode::invalid_spec, "aggregation level q must be >= 1");
    }
    const int terms = (n - 1) / 2;
    CompensatedSum s1, s2, s3;
    for (int j = 1; j <= terms; ++j) {
        const double lambda = 2.0 * std::numbers::pi * j / static_cast<double>(n);
        const double w = dirichlet_kernel(q, lambda);
        s1.add(w);
        s2.add(w * w);
        s3.add(w * w * w);
    }
    const double denom = s2.value() * s2.value();
    return 1.0 - (2.0 / 3.0) * (s1.value() * s3.value()) / denom;
}

double beta_exponent_cached(int n, int q) {
    static std::shared_mutex mutex;
    static std::map<std::pair<int, int>, double> cache;

    const std::pair<int, int> key{n, q};
    {
        std::shared_lock lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    const double value = beta_exponent(n, q);
    std::unique_lock lock(mutex);
    return cache.try_emplace(key, value).first->second;
}

VrStat variance_ratio(std::span<const double> returns, int q) {
    const int n = static_cast<int>(returns.size());
    VrStat stat;
    stat.sigma_a2 = variance_a(returns);
    const auto [sigma_c2, m] = variance_c(returns, q);
    stat.sigma_c2 = sigma_c2;
    stat.m = m;
    if (!(stat.sigma_a2 > 0.0)) {
        throw Error(ErrorCode::degenerate_day,
                    "one-period variance is zero (constant-price day)");
    }
    stat.beta = beta_exponent_cached(n, q);
    stat.vr = std::pow(stat.sigma_c2 / stat.sigma_a2, stat.beta);
    stat.asymptotic_sd =
        stat.beta * std::sqrt(2.0 * (2.0 * q - 1.0) * (q - 1.0) /
                              (3.0 * static_cast<double>(q) * static_cast<double>(n)));
    return stat;
}

} // namespace intravol
