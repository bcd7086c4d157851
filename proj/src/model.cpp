#include "hawkes/model.hpp"

#include "hawkes/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace hawkes {

HawkesModel::HawkesModel(Eigen::VectorXd baseline, KernelMatrix kernels)
    : baseline_(std::move(baseline)), kernels_(std::move(kernels)) {
    const auto d = static_cast<std::size_t>(baseline_.size());
    if (d == 0) throw std::invalid_argument("model: needs at least one component");
    for (Eigen::Index i = 0; i < baseline_.size(); ++i) {
        if (!(baseline_[i] > 0.0) || !std::isfinite(baseline_[i])) {
            throw std::invalid_argument("model: baseline rates must be finite and > 0");
        }
    }
    if (kernels_.size() != d) {
        throw std::invalid_argument("model: kernel matrix must have one row per component");
    }
    for (const auto& row : kernels_) {
        if (row.size() != d) {
            throw std::invalid_argument("model: kernel matrix must be square");
        }
    }
}

const LinkKernel& HawkesModel::kernel(int i, int j) const {
    if (i < 0 || i >= dim() || j < 0 || j >= dim()) {
        throw ComponentOutOfRangeError("model: kernel index out of range");
    }
    return kernels_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

Eigen::MatrixXd HawkesModel::integral_matrix() const {
    const int d = dim();
    Eigen::MatrixXd K(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            K(i, j) = kernel_integral(kernels_[i][j]);
        }
    }
    return K;
}

double HawkesModel::spectral_radius() const {
    const Eigen::MatrixXd K = integral_matrix();
    Eigen::EigenSolver<Eigen::MatrixXd> solver(K, /*computeEigenvectors=*/false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

bool HawkesModel::entrywise_subcritical() const {
    const Eigen::MatrixXd K = integral_matrix();
    return (K.cwiseAbs().array() < 1.0).all();
}

MeanIntensity mean_intensity(const HawkesModel& model) {
    const double rho = model.spectral_radius();
    if (!(rho < 1.0)) {
        throw NonStationaryError("mean intensity: spectral radius " + std::to_string(rho) +
                                 " is not below 1");
    }
    const int d = model.dim();
    const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(d, d) - model.integral_matrix();
    const Eigen::VectorXd p = A.partialPivLu().solve(model.baseline());
    const double residual = (A * p - model.baseline()).norm();
    if (!p.allFinite() || residual > 1e-10 * (1.0 + model.baseline().norm())) {
        throw SingularSystemError("mean intensity: linear solve failed");
    }
    return MeanIntensity{p};
}

double conditional_intensity(const HawkesModel& model, const EventStream& stream, int component,
                             double t) {
    if (component < 0 || component >= model.dim()) {
        throw ComponentOutOfRangeError("conditional intensity: component out of range");
    }
    if (stream.dim() != model.dim()) {
        throw ComponentOutOfRangeError("conditional intensity: stream/model dimension mismatch");
    }
    double lambda = model.baseline()[component];
    for (int j = 0; j < model.dim(); ++j) {
        const LinkKernel& k = model.kernel(component, j);
        if (kernel_is_zero(k)) continue;
        const double support = kernel_support_end(k);
        for (double tau : stream.times(j)) {
            if (tau >= t) break;
            const double lag = t - tau;
            if (lag > support) continue;
            lambda += kernel_value(k, lag);
        }
    }
    return lambda;
}

Eigen::MatrixXd count_covariance_rate(const HawkesModel& model) {
    const Eigen::VectorXd p = mean_intensity(model).rate;
    const int d = model.dim();
    const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(d, d) - model.integral_matrix();
    const Eigen::MatrixXd Ainv = A.partialPivLu().inverse();
    return Ainv * p.asDiagonal() * Ainv.transpose();
}

} // namespace hawkes
