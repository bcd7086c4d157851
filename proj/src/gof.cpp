#include "hawkes/gof.hpp"

#include "hawkes/errors.hpp"

#include <boost/math/distributions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace hawkes {

namespace {

// All compensator evaluations run over one flattened description of row i's
// intensity: a constant baseline, exponential contributions tracked as
// decaying sums, and piecewise-constant contributions tracked as level
// deltas at their breakpoints.
struct ExpTerm {
    int source = 0;
    double alpha = 0.0;
    double beta = 0.0;
};

struct RowSpec {
    double baseline = 0.0;
    std::vector<ExpTerm> exp_terms;                  // per source with an exponential link
    std::vector<const StepKernel*> step_by_source;   // nullptr when absent/zero
};

RowSpec row_spec(const Eigen::VectorXd& baseline, const KernelMatrix& kernels, int i) {
    RowSpec spec;
    spec.baseline = baseline[i];
    const int d = static_cast<int>(kernels.size());
    spec.step_by_source.assign(static_cast<std::size_t>(d), nullptr);
    for (int j = 0; j < d; ++j) {
        const LinkKernel& k = kernels[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (const auto* e = std::get_if<ExponentialKernel>(&k)) {
            if (e->alpha > 0.0) spec.exp_terms.push_back({j, e->alpha, e->beta});
        } else if (const auto* s = std::get_if<StepKernel>(&k)) {
            if (!kernel_is_zero(k)) spec.step_by_source[static_cast<std::size_t>(j)] = s;
        }
    }
    return spec;
}

// Timeline entries, processed in time order. Queries are recorded before
// same-time state changes: the integral up to t does not see a jump at t.
enum class ChangeKind { query, exp_jump, step_delta };

struct ChangePoint {
    double time = 0.0;
    ChangeKind kind = ChangeKind::query;
    int index = 0;     // exp term index, or query index
    double delta = 0.0; // step level change
};

struct SweepResult {
    std::vector<double> values;
    double clamped_fraction = 0.0;
};

// Integrates max(lambda, 0) where, between change points,
// lambda(x) = C + sum_m s_m * exp(-beta_m * x) with every s_m >= 0, so the
// intensity is nonincreasing on the segment and crosses zero at most once.
class SegmentIntegrator {
public:
    explicit SegmentIntegrator(const RowSpec& spec) : spec_(spec) {
        states_.assign(spec.exp_terms.size(), 0.0);
    }

    double constant = 0.0; // baseline + active step levels

    void add_exp_jump(int term) { states_[static_cast<std::size_t>(term)] += spec_.exp_terms[static_cast<std::size_t>(term)].alpha; }

    double positive_area() const { return positive_area_; }
    double clamped_mass() const { return clamped_mass_; }

    void advance(double dt) {
        if (dt <= 0.0) return;
        const double lam0 = value_at(0.0);
        const double lam1 = value_at(dt);
        if (lam0 >= 0.0 && lam1 >= 0.0) {
            positive_area_ += primitive(dt);
        } else if (lam0 < 0.0) {
            clamped_mass_ -= primitive(dt);
        } else {
            const double cross = find_crossing(dt);
            positive_area_ += primitive(cross);
            clamped_mass_ -= primitive(dt) - primitive(cross);
        }
        decay(dt);
    }

private:
    double value_at(double x) const {
        double v = constant;
        for (std::size_t m = 0; m < states_.size(); ++m) {
            v += states_[m] * std::exp(-spec_.exp_terms[m].beta * x);
        }
        return v;
    }

    // Integral of lambda over [0, x] within the segment (sign included).
    double primitive(double x) const {
        double area = constant * x;
        for (std::size_t m = 0; m < states_.size(); ++m) {
            const double beta = spec_.exp_terms[m].beta;
            area += states_[m] / beta * (1.0 - std::exp(-beta * x));
        }
        return area;
    }

    double find_crossing(double dt) const {
        double lo = 0.0, hi = dt;
        for (int iter = 0; iter < 200 && hi - lo > 1e-15 * dt; ++iter) {
            const double mid = 0.5 * (lo + hi);
            (value_at(mid) >= 0.0 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }

    void decay(double dt) {
        for (std::size_t m = 0; m < states_.size(); ++m) {
            states_[m] *= std::exp(-spec_.exp_terms[m].beta * dt);
        }
    }

    const RowSpec& spec_;
    std::vector<double> states_;
    double positive_area_ = 0.0;
    double clamped_mass_ = 0.0;
};

SweepResult compensator_sweep(const RowSpec& spec, const EventStream& stream,
                              const std::vector<double>& queries) {
    SweepResult result;
    result.values.assign(queries.size(), 0.0);
    if (queries.empty()) return result;
    const double end = queries.back();

    std::vector<ChangePoint> points;
    for (std::size_t q = 0; q < queries.size(); ++q) {
        points.push_back({queries[q], ChangeKind::query, static_cast<int>(q), 0.0});
    }
    for (std::size_t m = 0; m < spec.exp_terms.size(); ++m) {
        for (double tau : stream.times(spec.exp_terms[m].source)) {
            if (tau >= end) break;
            points.push_back({tau, ChangeKind::exp_jump, static_cast<int>(m), 0.0});
        }
    }
    for (int j = 0; j < stream.dim(); ++j) {
        const StepKernel* s = spec.step_by_source[static_cast<std::size_t>(j)];
        if (s == nullptr) continue;
        const auto n = s->levels.size();
        for (double tau : stream.times(j)) {
            if (tau >= end) break;
            double prev = 0.0;
            for (std::size_t l = 0; l <= n; ++l) {
                const double edge = tau + s->bin_width * static_cast<double>(l);
                if (edge >= end) break;
                const double level = l < n ? s->levels[l] : 0.0;
                if (level != prev) {
                    points.push_back({edge, ChangeKind::step_delta, 0, level - prev});
                }
                prev = level;
            }
        }
    }
    std::stable_sort(points.begin(), points.end(),
                     [](const ChangePoint& a, const ChangePoint& b) {
                         if (a.time != b.time) return a.time < b.time;
                         // Queries first: the jump at t does not affect [0, t].
                         return static_cast<int>(a.kind) < static_cast<int>(b.kind);
                     });

    SegmentIntegrator integrator(spec);
    integrator.constant = spec.baseline;
    double clock = 0.0;
    for (const ChangePoint& point : points) {
        integrator.advance(point.time - clock);
        clock = point.time;
        switch (point.kind) {
            case ChangeKind::query:
                result.values[static_cast<std::size_t>(point.index)] = integrator.positive_area();
                break;
            case ChangeKind::exp_jump:
                integrator.add_exp_jump(point.index);
                break;
            case ChangeKind::step_delta:
                integrator.constant += point.delta;
                break;
        }
    }
    const double total = integrator.positive_area() + integrator.clamped_mass();
    result.clamped_fraction = total > 0.0 ? integrator.clamped_mass() / total : 0.0;
    return result;
}

double compensator_at(const Eigen::VectorXd& baseline, const KernelMatrix& kernels,
                      const EventStream& stream, int component, double t) {
    if (component < 0 || component >= stream.dim()) {
        throw ComponentOutOfRangeError("compensator: component out of range");
    }
    if (t < 0.0 || t > stream.horizon()) {
        throw TimeOutOfRangeError("compensator: t outside [0, horizon]");
    }
    if (t == 0.0) return 0.0;
    const RowSpec spec = row_spec(baseline, kernels, component);
    return compensator_sweep(spec, stream, {t}).values[0];
}

ResidualStream transform_all(const Eigen::VectorXd& baseline, const KernelMatrix& kernels,
                             const EventStream& stream) {
    const int d = stream.dim();
    if (static_cast<int>(kernels.size()) != d) {
        throw ComponentOutOfRangeError("residual transform: dimension mismatch");
    }
    ResidualStream out;
    out.times.resize(static_cast<std::size_t>(d));
    out.clamped_fraction.assign(static_cast<std::size_t>(d), 0.0);
    for (int i = 0; i < d; ++i) {
        const auto& events = stream.times(i);
        if (events.empty()) continue;
        const RowSpec spec = row_spec(baseline, kernels, i);
        SweepResult swept = compensator_sweep(spec, stream, events);
        for (std::size_t j = 1; j < swept.values.size(); ++j) {
            if (!(swept.values[j] > swept.values[j - 1])) {
                throw NonMonotoneCompensatorError(
                    "residual transform: component " + std::to_string(i) +
                    " has coincident transformed times (intensity vanished between events)");
            }
        }
        out.times[static_cast<std::size_t>(i)] = std::move(swept.values);
        out.clamped_fraction[static_cast<std::size_t>(i)] = swept.clamped_fraction;
    }
    return out;
}

const std::vector<double>& residual_times(const ResidualStream& residuals, int component) {
    if (component < 0 || component >= residuals.dim()) {
        throw ComponentOutOfRangeError("residuals: component out of range");
    }
    return residuals.times[static_cast<std::size_t>(component)];
}

} // namespace

double compensator(const HawkesModel& model, const EventStream& stream, int component,
                   double t) {
    return compensator_at(model.baseline(), model.kernels(), stream, component, t);
}

double compensator(const LinkEstimate& estimate, const EventStream& stream, int component,
                   double t) {
    return compensator_at(estimate.baseline_per_time(), estimate.step_kernels, stream, component,
                          t);
}

ResidualStream residual_transform(const HawkesModel& model, const EventStream& stream) {
    return transform_all(model.baseline(), model.kernels(), stream);
}

ResidualStream residual_transform(const LinkEstimate& estimate, const EventStream& stream) {
    return transform_all(estimate.baseline_per_time(), estimate.step_kernels, stream);
}

std::vector<double> residual_interarrivals(const ResidualStream& residuals, int component) {
    const auto& times = residual_times(residuals, component);
    std::vector<double> gaps;
    gaps.reserve(times.size());
    double prev = 0.0;
    for (double t : times) {
        gaps.push_back(t - prev);
        prev = t;
    }
    return gaps;
}

std::vector<QuantilePoint> component_quantiles(const ResidualStream& residuals, int component,
                                               int grid_size) {
    if (grid_size < 1) throw std::invalid_argument("quantiles: grid size must be >= 1");
    std::vector<double> gaps = residual_interarrivals(residuals, component);
    const std::size_t n = gaps.size();
    if (n < 2) {
        throw TooFewEventsError("quantiles: component " + std::to_string(component) +
                                " has fewer than 2 events");
    }
    std::sort(gaps.begin(), gaps.end());

    std::vector<QuantilePoint> points;
    points.reserve(static_cast<std::size_t>(grid_size));
    for (int j = 1; j <= grid_size; ++j) {
        QuantilePoint pt;
        pt.p = (static_cast<double>(j) - 0.5) / static_cast<double>(grid_size);
        pt.theoretical = -std::log1p(-pt.p);

        // Interpolated empirical quantile (the usual type-7 convention).
        const double g = pt.p * static_cast<double>(n - 1);
        const auto lo = static_cast<std::size_t>(std::floor(g));
        const double frac = g - static_cast<double>(lo);
        pt.empirical = lo + 1 < n ? (1.0 - frac) * gaps[lo] + frac * gaps[lo + 1] : gaps[lo];

        // Under the unit-exponential null, F(X_(r)) is Beta(r, n - r + 1);
        // map its exact 95% interval through the exponential quantile.
        const auto r = std::min<std::size_t>(
            n, std::max<std::size_t>(1, static_cast<std::size_t>(
                                            std::ceil(pt.p * static_cast<double>(n)))));
        const boost::math::beta_distribution<double> order_stat(
            static_cast<double>(r), static_cast<double>(n - r + 1));
        pt.band_lo = -std::log1p(-boost::math::quantile(order_stat, 0.025));
        pt.band_hi = -std::log1p(-boost::math::quantile(order_stat, 0.975));
        points.push_back(pt);
    }
    return points;
}

QuantileReport quantile_report(const ResidualStream& residuals, int grid_size) {
    QuantileReport report;
    report.per_component.resize(static_cast<std::size_t>(residuals.dim()));
    for (int i = 0; i < residuals.dim(); ++i) {
        try {
            report.per_component[static_cast<std::size_t>(i)] =
                component_quantiles(residuals, i, grid_size);
        } catch (const TooFewEventsError&) {
            report.skipped_components.push_back(i);
        }
    }
    return report;
}

double ks_statistic(const ResidualStream& residuals, int component) {
    std::vector<double> gaps = residual_interarrivals(residuals, component);
    const std::size_t n = gaps.size();
    if (n < 2) {
        throw TooFewEventsError("ks statistic: component " + std::to_string(component) +
                                " has fewer than 2 events");
    }
    std::sort(gaps.begin(), gaps.end());
    double dist = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double cdf = -std::expm1(-gaps[j]);
        const double hi = static_cast<double>(j + 1) / static_cast<double>(n) - cdf;
        const double lo = cdf - static_cast<double>(j) / static_cast<double>(n);
        dist = std::max({dist, hi, lo});
    }
    return dist;
}

double ks_critical_5pct(std::size_t n) {
    const double root = std::sqrt(static_cast<double>(n));
    return 1.358 / (root + 0.12 + 0.11 / root);
}

} // namespace hawkes
