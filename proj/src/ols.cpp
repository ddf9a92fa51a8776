#include "intravol/ols.hpp"

#include "intravol/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace intravol {

OlsFit ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& X, SeMode se_mode) {
    const Eigen::Index n = X.rows();
    const Eigen::Index p = X.cols();
    if (y.size() != n) {
        throw Error(ErrorCode::alignment_error, "y and X row counts differ");
    }
    if (n <= p) {
        throw Error(ErrorCode::too_few_rows,
                    "need more rows than columns (n=" + std::to_string(n) +
                        ", cols=" + std::to_string(p) + ")");
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < p) {
        throw Error(ErrorCode::rank_deficient,
                    "design matrix rank " + std::to_string(qr.rank()) + " < " +
                        std::to_string(p) + " columns");
    }

    OlsFit fit;
    fit.coefficients = qr.solve(y);
    fit.residuals = y - X * fit.coefficients;
    fit.n_obs = static_cast<int>(n);
    fit.n_regressors = static_cast<int>(p) - 1;

    const double ssr = fit.residuals.squaredNorm();
    fit.sigma2 = ssr / static_cast<double>(n - p);

    const double mean_y = y.mean();
    const double tss = (y.array() - mean_y).matrix().squaredNorm();
    // a response that is constant up to rounding has no variation to
    // explain; the raw SSR/TSS ratio would be noise over noise
    const double tss_floor = y.squaredNorm() *
                             std::pow(static_cast<double>(n) *
                                          std::numeric_limits<double>::epsilon(),
                                      2);
    fit.r2 = tss > tss_floor ? 1.0 - ssr / tss : 0.0;
    fit.adj_r2 = 1.0 - (1.0 - fit.r2) * static_cast<double>(n - 1) /
                           static_cast<double>(n - p);

    // (X'X)^-1 = P R^-1 R^-T P' from the pivoted factorization X P = Q R
    Eigen::MatrixXd r_inv =
        qr.matrixR().topLeftCorner(p, p).triangularView<Eigen::Upper>().solve(
            Eigen::MatrixXd::Identity(p, p));
    Eigen::MatrixXd xtx_inv = qr.colsPermutation() * (r_inv * r_inv.transpose()) *
                              qr.colsPermutation().transpose();

    fit.standard_errors.resize(p);
    if (se_mode == SeMode::ols) {
        for (Eigen::Index j = 0; j < p; ++j) {
            fit.standard_errors(j) = std::sqrt(fit.sigma2 * xtx_inv(j, j));
        }
    } else {
        // HC0: (X'X)^-1 X' diag(e^2) X (X'X)^-1
        Eigen::MatrixXd bread = X * xtx_inv;              // n x p
        Eigen::ArrayXd e2 = fit.residuals.array().square();
        for (Eigen::Index j = 0; j < p; ++j) {
            fit.standard_errors(j) =
                std::sqrt((bread.col(j).array().square() * e2).sum());
        }
    }
    return fit;
}

} // namespace intravol
