#pragma once

#include "hawkes/event_stream.hpp"
#include "hawkes/kernel.hpp"

#include <Eigen/Dense>

#include <vector>

namespace hawkes {

using KernelMatrix = std::vector<std::vector<LinkKernel>>;

/// Linear self-exciting model: baseline rates nu plus a d x d matrix of link
/// kernels. Entry (i, j) of the kernel matrix is the effect of component j's
/// events on component i's intensity.
///
/// Construction validates shapes and nu > 0. Stationarity (spectral radius of
/// the kernel-integral matrix below 1) is a property the operations that need
/// it check explicitly, so that near- and super-critical configurations can
/// still be represented and diagnosed.
class HawkesModel {
public:
    HawkesModel(Eigen::VectorXd baseline, KernelMatrix kernels);

    int dim() const { return static_cast<int>(baseline_.size()); }
    const Eigen::VectorXd& baseline() const { return baseline_; }
    const LinkKernel& kernel(int i, int j) const;
    const KernelMatrix& kernels() const { return kernels_; }

    /// K with K_ij = integral of kernel (i, j).
    Eigen::MatrixXd integral_matrix() const;

    /// Spectral radius of integral_matrix().
    double spectral_radius() const;

    /// The operative stationarity check: spectral radius < 1.
    bool is_stationary() const { return spectral_radius() < 1.0; }

    /// Weaker entrywise diagnostic: every |kernel integral| < 1. Reported as
    /// a warning by the CLI when it fails while the spectral check passes.
    bool entrywise_subcritical() const;

private:
    Eigen::VectorXd baseline_;
    KernelMatrix kernels_;
};

/// Expected stationary event rates.
struct MeanIntensity {
    Eigen::VectorXd rate;
};

/// Solves (I - K) p = nu. Throws NonStationaryError when the spectral radius
/// of K is >= 1 and SingularSystemError when the solve fails numerically.
MeanIntensity mean_intensity(const HawkesModel& model);

/// lambda_i(t) = nu_i + sum_j sum_{tau < t} phi_ij(t - tau). Events at
/// exactly t are excluded, matching the left-continuity of the intensity.
double conditional_intensity(const HawkesModel& model, const EventStream& stream, int component,
                             double t);

/// Asymptotic covariance rate of the counting process,
/// (I - K)^{-1} diag(p) (I - K)^{-T}; the variance of N_i(T)/T is
/// approximately row i's diagonal entry over T. Used for Monte-Carlo
/// tolerances in tests and diagnostics.
Eigen::MatrixXd count_covariance_rate(const HawkesModel& model);

} // namespace hawkes
