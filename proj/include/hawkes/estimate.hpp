#pragma once

#include "hawkes/binned.hpp"
#include "hawkes/discretize.hpp"
#include "hawkes/model.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <utility>
#include <vector>

namespace hawkes {

struct EstimatorConfig {
    double bin_width = 0.0;        // 0 = inherit from the binned series
    int lag_order = 1;             // k >= 1
    double ridge = 0.0;            // added to the Gram diagonal; >= 0
    bool nonneg_projection = false; // clamp negative step levels after fitting
};

/// Fitted lagged regression. coefficients is d x (k*d); the block for lag u
/// (columns (u-1)*d .. u*d-1) estimates bin_width * phi(u * bin_width).
/// step_kernels holds the induced piecewise-constant links with level
/// floor(u/h) = coefficient block floor(u/h)+1 divided by h; when
/// nonneg_projected is set the kernels are clamped at zero while
/// coefficients always keeps the raw solution.
struct LinkEstimate {
    double bin_width = 0.0;
    int lag_order = 0;
    int dim = 0;
    Eigen::MatrixXd coefficients;     // raw g
    Eigen::VectorXd baseline_scaled;  // nu_hat, in events per bin
    KernelMatrix step_kernels;        // phi_hat
    bool nonneg_projected = false;

    double ridge = 0.0;
    double gram_condition = 0.0;      // |D|max / |D|min from the factorization
    std::int64_t effective_samples = 0;
    std::int64_t dropped_tail_events = 0;

    Eigen::VectorXd baseline_per_time() const { return baseline_scaled / bin_width; }
};

/// Least-squares fit of the binned autoregression. One symmetric
/// factorization of the Gram matrix (plus optional ridge) is shared by all
/// d target rows; baseline_scaled = ybar - g * ybark. Throws
/// SingularCovarianceError when the normal equations cannot be solved to
/// tolerance (hint: more data, smaller lag order, or a positive ridge) and
/// InsufficientDataError when the series is too short.
LinkEstimate fit(const BinnedSeries& binned, const EstimatorConfig& config);

/// phi_hat_ij(u): step level floor(u/h) for u in [0, k*h), zero beyond and
/// for u < 0. Reflects the projection when it was requested.
double evaluate_step(const LinkEstimate& estimate, int i, int j, double u);

/// Integrated Frobenius distance between the step estimate and the true
/// kernel matrix over [0, inf): fixed-order quadrature between breakpoints on
/// [0, k*h), then the tail integral of the truth alone.
double l1_error(const LinkEstimate& estimate, const HawkesModel& truth);

struct RateCheckReport {
    bool nonincreasing = false;
    bool strictly_decreasing = false;
    std::vector<std::pair<double, double>> medians; // (horizon, median error)
};

/// Groups (horizon, error) samples by horizon, takes medians, and reports
/// whether they are nonincreasing in the horizon. Needs at least two
/// distinct horizons.
RateCheckReport rate_check(const std::vector<std::pair<double, double>>& results);

/// Heuristic rule for flagging a link as nonzero: peak |level| above
/// scale_factor times a robust scale of the pooled off-diagonal levels.
/// Descriptive only; no significance level attaches to it.
struct EdgeThresholdRule {
    double scale_factor = 4.0;
};

/// Peak |level| per (i, j), computed from the raw coefficients.
Eigen::MatrixXd link_peak_matrix(const LinkEstimate& estimate);

/// 1.4826 * median(|level - median|) over all off-diagonal raw levels
/// (all levels when d == 1).
double link_noise_scale(const LinkEstimate& estimate);

} // namespace hawkes
