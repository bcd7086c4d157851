#include "hawkes/estimate.hpp"

#include "hawkes/errors.hpp"
#include "hawkes/quadrature.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace hawkes {

LinkEstimate fit(const BinnedSeries& binned, const EstimatorConfig& config) {
    if (config.bin_width != 0.0 && config.bin_width != binned.bin_width) {
        throw std::invalid_argument("fit: config bin width disagrees with the binned series");
    }
    if (!(config.ridge >= 0.0) || !std::isfinite(config.ridge)) {
        throw std::invalid_argument("fit: ridge must be finite and >= 0");
    }
    const double h = binned.bin_width;
    const int k = config.lag_order;
    const int d = binned.dim();

    CovarianceStructure cov = build_covariances(binned, k);

    Eigen::MatrixXd gram = cov.Gamma_hat;
    if (config.ridge > 0.0) {
        gram.diagonal().array() += config.ridge;
    }
    const Eigen::LDLT<Eigen::MatrixXd> factorization(gram);
    const Eigen::VectorXd diag = factorization.vectorD();
    const double dmax = diag.cwiseAbs().maxCoeff();
    const double dmin = diag.cwiseAbs().minCoeff();

    LinkEstimate est;
    est.bin_width = h;
    est.lag_order = k;
    est.dim = d;
    est.ridge = config.ridge;
    est.gram_condition = dmin > 0.0 ? dmax / dmin : std::numeric_limits<double>::infinity();
    est.effective_samples = cov.effective_samples;
    est.dropped_tail_events = binned.dropped_tail_events;

    // Without a ridge, refuse rank-deficient systems outright; a pivot at
    // roundoff scale means the regression is not identified even when a
    // solution happens to be consistent.
    const std::string hint =
        "; increase the observation span, decrease the lag order, or set a ridge";
    if (config.ridge == 0.0 && (!(dmax > 0.0) || dmin <= 1e-13 * dmax)) {
        throw SingularCovarianceError("fit: Gram matrix is numerically singular" + hint);
    }
    est.coefficients = factorization.solve(cov.gamma_hat.transpose()).transpose();
    const double residual = (cov.gamma_hat - est.coefficients * gram).norm();
    const double scale = std::max(1.0, cov.gamma_hat.norm());
    if (factorization.info() != Eigen::Success || !est.coefficients.allFinite() ||
        residual > 1e-8 * scale) {
        throw SingularCovarianceError(
            "fit: Gram matrix is numerically singular (relative residual " +
            std::to_string(residual / scale) + ")" + hint);
    }
    est.baseline_scaled = cov.ybar - est.coefficients * cov.ybark;

    est.nonneg_projected = config.nonneg_projection;
    est.step_kernels.assign(static_cast<std::size_t>(d),
                            std::vector<LinkKernel>(static_cast<std::size_t>(d), make_zero()));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            std::vector<double> levels(static_cast<std::size_t>(k));
            for (int u = 0; u < k; ++u) {
                double level = est.coefficients(i, static_cast<Eigen::Index>(u) * d + j) / h;
                if (config.nonneg_projection && level < 0.0) level = 0.0;
                levels[static_cast<std::size_t>(u)] = level;
            }
            est.step_kernels[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                make_step(h, std::move(levels));
        }
    }
    return est;
}

double evaluate_step(const LinkEstimate& estimate, int i, int j, double u) {
    if (i < 0 || i >= estimate.dim || j < 0 || j >= estimate.dim) {
        throw ComponentOutOfRangeError("evaluate step: component out of range");
    }
    if (u < 0.0) return 0.0;
    const auto level = static_cast<std::int64_t>(std::floor(u / estimate.bin_width));
    if (level >= estimate.lag_order) return 0.0;
    const auto& kernel = std::get<StepKernel>(
        estimate.step_kernels[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    return kernel.levels[static_cast<std::size_t>(level)];
}

namespace {

double frobenius_difference(const LinkEstimate& estimate, const HawkesModel& truth, double u) {
    double sum = 0.0;
    for (int i = 0; i < estimate.dim; ++i) {
        for (int j = 0; j < estimate.dim; ++j) {
            const double diff = evaluate_step(estimate, i, j, u) -
                                kernel_value(truth.kernel(i, j), u);
            sum += diff * diff;
        }
    }
    return std::sqrt(sum);
}

double frobenius_truth(const HawkesModel& truth, double u) {
    double sum = 0.0;
    for (int i = 0; i < truth.dim(); ++i) {
        for (int j = 0; j < truth.dim(); ++j) {
            const double v = kernel_value(truth.kernel(i, j), u);
            sum += v * v;
        }
    }
    return std::sqrt(sum);
}

} // namespace

double l1_error(const LinkEstimate& estimate, const HawkesModel& truth) {
    if (truth.dim() != estimate.dim) {
        throw ComponentOutOfRangeError("l1 error: dimension mismatch");
    }
    const double h = estimate.bin_width;
    const double support = h * estimate.lag_order;

    // Breakpoints: estimate bin edges plus the truth's own step edges, so
    // that every quadrature piece has a smooth integrand.
    std::set<double> cuts;
    for (int u = 0; u <= estimate.lag_order; ++u) cuts.insert(u * h);
    double min_beta = std::numeric_limits<double>::infinity();
    bool has_exponential_tail = false;
    double max_step_support = 0.0;
    for (int i = 0; i < truth.dim(); ++i) {
        for (int j = 0; j < truth.dim(); ++j) {
            const LinkKernel& kernel = truth.kernel(i, j);
            if (const auto* s = std::get_if<StepKernel>(&kernel)) {
                const double end = kernel_support_end(kernel);
                max_step_support = std::max(max_step_support, end);
                for (std::size_t l = 1; l <= s->levels.size(); ++l) {
                    const double edge = s->bin_width * static_cast<double>(l);
                    if (edge < support) cuts.insert(edge);
                }
            } else if (const auto* e = std::get_if<ExponentialKernel>(&kernel)) {
                if (e->alpha > 0.0) {
                    has_exponential_tail = true;
                    min_beta = std::min(min_beta, e->beta);
                }
            }
        }
    }

    // Adaptive quadrature per piece: the integrand is smooth except where the
    // difference passes through zero, which the subdivision localizes.
    double total = 0.0;
    double prev = 0.0;
    for (double cut : cuts) {
        if (cut > prev) {
            total += adaptive_simpson(
                [&](double u) { return frobenius_difference(estimate, truth, u); }, prev, cut,
                1e-11);
        }
        prev = cut;
    }

    // Tail: the estimate is zero past its support, so integrate the truth.
    double tail_end = std::max(support, max_step_support);
    if (tail_end > support) {
        total += adaptive_simpson([&](double u) { return frobenius_truth(truth, u); }, support,
                                  tail_end, 1e-12);
    }
    if (has_exponential_tail) {
        const double far = tail_end + 60.0 / min_beta;
        total += adaptive_simpson([&](double u) { return frobenius_truth(truth, u); }, tail_end,
                                  far, 1e-12);
    }
    return total;
}

RateCheckReport rate_check(const std::vector<std::pair<double, double>>& results) {
    std::map<double, std::vector<double>> groups;
    for (const auto& [horizon, error] : results) groups[horizon].push_back(error);
    if (groups.size() < 2) {
        throw std::invalid_argument("rate check: need results for at least two horizons");
    }
    RateCheckReport report;
    for (auto& [horizon, errors] : groups) {
        std::sort(errors.begin(), errors.end());
        const std::size_t n = errors.size();
        const double median =
            (n % 2 == 1) ? errors[n / 2] : 0.5 * (errors[n / 2 - 1] + errors[n / 2]);
        report.medians.emplace_back(horizon, median);
    }
    report.nonincreasing = true;
    report.strictly_decreasing = true;
    for (std::size_t i = 1; i < report.medians.size(); ++i) {
        if (report.medians[i].second > report.medians[i - 1].second) report.nonincreasing = false;
        if (report.medians[i].second >= report.medians[i - 1].second) {
            report.strictly_decreasing = false;
        }
    }
    return report;
}

Eigen::MatrixXd link_peak_matrix(const LinkEstimate& estimate) {
    const int d = estimate.dim;
    Eigen::MatrixXd peaks = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            double peak = 0.0;
            for (int u = 0; u < estimate.lag_order; ++u) {
                const double level =
                    estimate.coefficients(i, static_cast<Eigen::Index>(u) * d + j) /
                    estimate.bin_width;
                peak = std::max(peak, std::abs(level));
            }
            peaks(i, j) = peak;
        }
    }
    return peaks;
}

double link_noise_scale(const LinkEstimate& estimate) {
    const int d = estimate.dim;
    std::vector<double> levels;
    levels.reserve(static_cast<std::size_t>(estimate.lag_order) * d * d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            if (d > 1 && i == j) continue;
            for (int u = 0; u < estimate.lag_order; ++u) {
                levels.push_back(estimate.coefficients(i, static_cast<Eigen::Index>(u) * d + j) /
                                 estimate.bin_width);
            }
        }
    }
    if (levels.empty()) return 0.0;
    auto median_of = [](std::vector<double> xs) {
        const std::size_t n = xs.size();
        std::nth_element(xs.begin(), xs.begin() + n / 2, xs.end());
        double med = xs[n / 2];
        if (n % 2 == 0) {
            std::nth_element(xs.begin(), xs.begin() + n / 2 - 1, xs.end());
            med = 0.5 * (med + xs[n / 2 - 1]);
        }
        return med;
    };
    const double center = median_of(levels);
    std::vector<double> deviations;
    deviations.reserve(levels.size());
    for (double v : levels) deviations.push_back(std::abs(v - center));
    return 1.4826 * median_of(std::move(deviations));
}

} // namespace hawkes
