#pragma once

#include <Eigen/Dense>

#include <cstdint>

namespace hawkes {

/// Interval counts of an event stream: column t-1 holds the number of events
/// per component in ((t-1)*h, t*h] for t = 1..num_bins. Events past the last
/// full bin are dropped at construction time; their count is kept as a
/// diagnostic.
struct BinnedSeries {
    double bin_width = 0.0;
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> counts; // d x num_bins
    std::int64_t dropped_tail_events = 0;

    int dim() const { return static_cast<int>(counts.rows()); }
    std::int64_t num_bins() const { return counts.cols(); }
};

} // namespace hawkes
