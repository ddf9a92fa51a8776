#pragma once

#include <Eigen/Dense>

namespace intravol {

enum class SeMode {
    ols,   // homoskedastic, s^2 (X'X)^-1
    white, // heteroskedasticity-robust HC0 sandwich
};

struct OlsFit {
    Eigen::VectorXd coefficients;
    Eigen::VectorXd standard_errors;
    Eigen::VectorXd residuals;
    double r2 = 0.0;
    double adj_r2 = 0.0;     // 1 - (1-R^2)(n-1)/(n-p-1), p = non-intercept count
    double sigma2 = 0.0;     // residual variance, SSR/(n - cols)
    int n_obs = 0;
    int n_regressors = 0;    // non-intercept regressor count
};

/// Least squares via column-pivoted Householder QR. X must contain the
/// intercept column; rank deficiency is reported, never pseudo-inverted.
OlsFit ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
           SeMode se_mode = SeMode::ols);

} // namespace intravol
