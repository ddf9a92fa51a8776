#pragma once

#include <span>

namespace intravol {

/// Daily overlapped, power-transformed variance-ratio statistic and the
/// quantities it is assembled from.
struct VrStat {
    double vr = 0.0;            // (sigma_c2 / sigma_a2)^beta
    double beta = 0.0;          // power-transform exponent, data independent
    double sigma_a2 = 0.0;      // one-period sample variance, 1/(n-1) normalized
    double sigma_c2 = 0.0;      // overlapped q-period variance, 1/m normalized
    double m = 0.0;             // q(n-q+1)(1-q/n)
    double asymptotic_sd = 0.0; // diagnostic-grade null standard deviation
};

double sample_mean(std::span<const double> returns);

/// (1/(n-1)) * sum_k (r_k - mean)^2, two-pass.
double variance_a(std::span<const double> returns);

struct OverlappedVariance {
    double sigma_c2 = 0.0;
    double m = 0.0;
};

/// (1/m) * sum over all overlapping q-windows of (window sum - q*mean)^2,
/// with m = q(n-q+1)(1-q/n). Requires n >= 2q.
OverlappedVariance variance_c(std::span<const double> returns, int q);

/// W_k(lambda) = (1/k) * sin^2(k*lambda/2) / sin^2(lambda/2).
double dirichlet_kernel(int k, double lambda);

/// beta = 1 - (2/3) * (S1*S3)/(S2^2) with S_p the p-th power sums of
/// W_q(2*pi*j/n) over j = 1..floor((n-1)/2). Depends on (n, q) only.
double beta_exponent(int n, int q);

/// Same value as beta_exponent, memoized per (n, q). Safe for concurrent
/// readers.
double beta_exponent_cached(int n, int q);

/// Assembles the full statistic for one day's returns. Throws DegenerateDay
/// when the one-period variance is zero (constant-price day).
VrStat variance_ratio(std::span<const double> returns, int q);

} // namespace intravol
