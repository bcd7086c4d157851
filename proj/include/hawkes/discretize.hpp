#pragma once

#include "hawkes/binned.hpp"
#include "hawkes/event_stream.hpp"

#include <Eigen/Dense>

#include <cstdint>

namespace hawkes {

/// Sample covariance structure of the lagged regression
///   Y_t ~ nu + g * X_t,  X_t = vec(Y_{t-1}, ..., Y_{t-k}),
/// accumulated over t = lag_order+1 .. num_bins with divisor
/// effective_samples = num_bins - lag_order. Entries are the mean-centered
/// sample covariances of (Y_t, X_t) and (X_t, X_t); centering uses the
/// summation-window means ybar and ybark, so gamma_hat / Gamma_hat together
/// with ybar, ybark reproduce the exact least-squares minimizer.
///
/// Gamma_hat is symmetric positive semidefinite by construction. Its (u, v)
/// block approaches the lag-(u - v) autocovariance as the sample grows, but
/// blocks on the same diagonal differ by O(lag_order / effective_samples)
/// boundary terms; the block-Toeplitz structure is asymptotic, not exact.
struct CovarianceStructure {
    double bin_width = 0.0;
    int lag_order = 0;
    Eigen::MatrixXd gamma_hat; // d x (k*d), block u-1 = cov(Y_t, Y_{t-u})
    Eigen::MatrixXd Gamma_hat; // (k*d) x (k*d)
    Eigen::VectorXd ybar;      // window mean of Y_t
    Eigen::VectorXd ybark;     // window mean of X_t, stacked per lag
    std::int64_t effective_samples = 0;
};

/// Count events per interval ((t-1)*h, t*h], t = 1..floor(horizon / h).
/// Events past the last full bin are dropped and counted in the result's
/// dropped_tail_events. Throws InvalidBinWidthError.
BinnedSeries bin(const EventStream& stream, double bin_width);

/// Lag-u sample autocovariance with the single full-sample mean:
///   C(u) = 1/(T_h - u) * sum_{t=u+1..T_h} (Y_t - mean)(Y_{t-u} - mean)'.
/// Throws LagOutOfRangeError for u < 0 or u >= num_bins.
Eigen::MatrixXd sample_autocovariance(const BinnedSeries& binned, std::int64_t lag);

/// One pass per lag over the count series; time linear in num_bins for each
/// of the lag_order diagonals. Throws InsufficientDataError when
/// num_bins <= lag_order * (dim + 1).
CovarianceStructure build_covariances(const BinnedSeries& binned, int lag_order);

} // namespace hawkes
