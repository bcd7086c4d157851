#pragma once

#include "hawkes/estimate.hpp"
#include "hawkes/event_stream.hpp"
#include "hawkes/model.hpp"

#include <vector>

namespace hawkes {

/// Event times mapped through the integrated intensity. Under the generating
/// model the per-component sequences are unit-rate Poisson arrivals.
struct ResidualStream {
    std::vector<std::vector<double>> times;
    /// Per component: fraction of integrated |intensity| that had to be
    /// clamped at zero. Zero for nonnegative kernels; positive values signal
    /// an estimate with substantial negative excursions.
    std::vector<double> clamped_fraction;

    int dim() const { return static_cast<int>(times.size()); }
};

/// Integrated intensity of component i on [0, t]. Negative intensity values
/// (possible for fitted step links) are clamped at zero inside the integral
/// so the result is nondecreasing in t. Closed form between breakpoints;
/// throws TimeOutOfRangeError for t outside [0, horizon].
double compensator(const HawkesModel& model, const EventStream& stream, int component, double t);

/// Same transform with the fitted links and the per-time-unit baseline
/// nu_hat / h.
double compensator(const LinkEstimate& estimate, const EventStream& stream, int component,
                   double t);

/// Applies the integrated intensity to every event time of every component.
/// Throws NonMonotoneCompensatorError when two events of one component map
/// to the same value (the intensity vanished on the stretch between them).
ResidualStream residual_transform(const HawkesModel& model, const EventStream& stream);
ResidualStream residual_transform(const LinkEstimate& estimate, const EventStream& stream);

/// Interarrival times of a residual component, including the gap from 0 to
/// the first arrival.
std::vector<double> residual_interarrivals(const ResidualStream& residuals, int component);

struct QuantilePoint {
    double p = 0.0;
    double empirical = 0.0;
    double theoretical = 0.0; // -log(1 - p)
    double band_lo = 0.0;     // pointwise 95% interval of the order statistic
    double band_hi = 0.0;
};

struct QuantileReport {
    std::vector<std::vector<QuantilePoint>> per_component; // empty when skipped
    std::vector<int> skipped_components;                   // fewer than 2 events
};

/// Quantiles of one residual component on the grid p_j = (j - 1/2) / m
/// against the unit-exponential reference, with exact beta order-statistic
/// 95% bands. Throws TooFewEventsError below 2 events.
std::vector<QuantilePoint> component_quantiles(const ResidualStream& residuals, int component,
                                               int grid_size);

/// component_quantiles over all components; too-small components are
/// recorded and skipped rather than failing the report.
QuantileReport quantile_report(const ResidualStream& residuals, int grid_size);

/// Kolmogorov-Smirnov distance between the residual interarrivals of one
/// component and the unit-exponential distribution. Throws
/// TooFewEventsError below 2 events.
double ks_statistic(const ResidualStream& residuals, int component);

/// Approximate 5%-level critical value for the KS distance at sample size n.
double ks_critical_5pct(std::size_t n);

} // namespace hawkes
