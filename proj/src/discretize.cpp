#include "hawkes/discretize.hpp"

#include "hawkes/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace hawkes {

BinnedSeries bin(const EventStream& stream, double bin_width) {
    if (!(bin_width > 0.0) || !std::isfinite(bin_width) || bin_width > stream.horizon()) {
        throw InvalidBinWidthError("bin: bin width must satisfy 0 < h <= horizon");
    }
    const double ratio = stream.horizon() / bin_width;
    // floor(T/h) with a relative guard so decimal widths like 0.1 do not lose
    // the last bin to representation error.
    auto num_bins = static_cast<std::int64_t>(std::floor(ratio * (1.0 + 1e-12) + 1e-12));
    if (num_bins < 1) {
        throw InvalidBinWidthError("bin: horizon shorter than one bin");
    }

    BinnedSeries out;
    out.bin_width = bin_width;
    out.counts.setZero(stream.dim(), num_bins);
    for (int i = 0; i < stream.dim(); ++i) {
        for (double tau : stream.times(i)) {
            // Half-open convention ((t-1)h, th]: an event exactly at t*h
            // belongs to bin t. Adjust the rounded index against the actual
            // bin-edge products.
            auto idx = static_cast<std::int64_t>(std::ceil(tau / bin_width));
            while (idx > 1 && static_cast<double>(idx - 1) * bin_width >= tau) --idx;
            while (static_cast<double>(idx) * bin_width < tau) ++idx;
            if (idx < 1) idx = 1;
            if (idx > num_bins) {
                ++out.dropped_tail_events;
                continue;
            }
            ++out.counts(i, idx - 1);
        }
    }
    return out;
}

Eigen::MatrixXd sample_autocovariance(const BinnedSeries& binned, std::int64_t lag) {
    const std::int64_t T = binned.num_bins();
    if (lag < 0 || lag >= T) {
        throw LagOutOfRangeError("sample autocovariance: lag " + std::to_string(lag) +
                                 " out of range for " + std::to_string(T) + " bins");
    }
    const int d = binned.dim();
    const Eigen::MatrixXd Y = binned.counts.cast<double>();
    const Eigen::VectorXd mean = Y.rowwise().mean();
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(d, d);
    for (std::int64_t t = lag; t < T; ++t) {
        acc.noalias() += (Y.col(t) - mean) * (Y.col(t - lag) - mean).transpose();
    }
    return acc / static_cast<double>(T - lag);
}

CovarianceStructure build_covariances(const BinnedSeries& binned, int lag_order) {
    if (lag_order < 1) {
        throw std::invalid_argument("build covariances: lag order must be >= 1");
    }
    const int d = binned.dim();
    const int k = lag_order;
    const std::int64_t T = binned.num_bins();
    const std::int64_t Tw = T - k;
    if (T <= static_cast<std::int64_t>(k) + static_cast<std::int64_t>(k) * d) {
        throw InsufficientDataError(
            "build covariances: need more than k*(d+1) = " + std::to_string(k * (d + 1)) +
            " bins to identify the regression, got " + std::to_string(T));
    }

    const Eigen::MatrixXd Y = binned.counts.cast<double>();

    // Prefix sums give every window mean in one pass. prefix.col(t) holds
    // the sum of columns 0..t-1 (1-based time t bins are column t-1).
    Eigen::MatrixXd prefix = Eigen::MatrixXd::Zero(d, T + 1);
    for (std::int64_t t = 0; t < T; ++t) {
        prefix.col(t + 1) = prefix.col(t) + Y.col(t);
    }
    // m[u] = mean of Y_{t-u} over t = k+1..T (1-based), u = 0..k.
    std::vector<Eigen::VectorXd> m(static_cast<std::size_t>(k) + 1);
    for (int u = 0; u <= k; ++u) {
        m[static_cast<std::size_t>(u)] =
            (prefix.col(T - u) - prefix.col(k - u)) / static_cast<double>(Tw);
    }

    CovarianceStructure cov;
    cov.bin_width = binned.bin_width;
    cov.lag_order = k;
    cov.effective_samples = Tw;
    cov.ybar = m[0];
    cov.ybark.resize(static_cast<Eigen::Index>(k) * d);
    for (int u = 1; u <= k; ++u) {
        cov.ybark.segment(static_cast<Eigen::Index>(u - 1) * d, d) = m[static_cast<std::size_t>(u)];
    }

    // gamma block u: sum_t Y_t Y_{t-u}' over the window, one pass per lag.
    cov.gamma_hat.resize(d, static_cast<Eigen::Index>(k) * d);
    for (int u = 1; u <= k; ++u) {
        Eigen::MatrixXd raw = Eigen::MatrixXd::Zero(d, d);
        for (std::int64_t t = k; t < T; ++t) { // 0-based column of Y_t
            raw.noalias() += Y.col(t) * Y.col(t - u).transpose();
        }
        cov.gamma_hat.block(0, static_cast<Eigen::Index>(u - 1) * d, d, d) =
            raw / static_cast<double>(Tw) -
            m[0] * m[static_cast<std::size_t>(u)].transpose();
    }

    // Gamma block (u, v): along each diagonal w = v - u the raw moment window
    // slides by one bin, so after one full pass for block (1, 1+w) the rest
    // follow from two rank-1 boundary updates each.
    cov.Gamma_hat.resize(static_cast<Eigen::Index>(k) * d, static_cast<Eigen::Index>(k) * d);
    for (int w = 0; w < k; ++w) {
        Eigen::MatrixXd raw = Eigen::MatrixXd::Zero(d, d);
        // Block (u, v) = (1, 1+w): sum over s = Y_{t-1} with t = k+1..T,
        // i.e. 0-based columns s = k-1..T-2 paired with s-w.
        for (std::int64_t s = k - 1; s <= T - 2; ++s) {
            raw.noalias() += Y.col(s) * Y.col(s - w).transpose();
        }
        for (int u = 1; u + w <= k; ++u) {
            const int v = u + w;
            const Eigen::MatrixXd block =
                raw / static_cast<double>(Tw) -
                m[static_cast<std::size_t>(u)] * m[static_cast<std::size_t>(v)].transpose();
            cov.Gamma_hat.block(static_cast<Eigen::Index>(u - 1) * d,
                                static_cast<Eigen::Index>(v - 1) * d, d, d) = block;
            if (w != 0) {
                cov.Gamma_hat.block(static_cast<Eigen::Index>(v - 1) * d,
                                    static_cast<Eigen::Index>(u - 1) * d, d, d) =
                    block.transpose();
            }
            if (u + w < k) {
                // Slide the window from (u, v) to (u+1, v+1).
                const std::int64_t top = T - u;    // 1-based index leaving the window
                const std::int64_t bottom = k - u; // 1-based index entering the window
                raw.noalias() -= Y.col(top - 1) * Y.col(top - 1 - w).transpose();
                raw.noalias() += Y.col(bottom - 1) * Y.col(bottom - 1 - w).transpose();
            }
        }
    }
    return cov;
}

} // namespace hawkes
