#include "hawkes/simulate.hpp"

#include "hawkes/errors.hpp"
#include "hawkes/rng.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>
#include <vector>

namespace hawkes {

namespace {

// Right-continuous step level at lag u >= 0, zero past the support.
double step_level(const StepKernel& s, double u) {
    const double idx = std::floor(u / s.bin_width);
    if (idx < 0.0 || idx >= static_cast<double>(s.levels.size())) return 0.0;
    return s.levels[static_cast<std::size_t>(idx)];
}

// Incremental intensity state anchored at the last accepted event.
//
// Exponential links keep one decayed sum per (target, source) pair; step
// links are evaluated from a sliding window of recent source events, pruned
// to the longest step support per source.
class IntensityState {
public:
    explicit IntensityState(const HawkesModel& model)
        : model_(model), d_(model.dim()), anchor_(0.0) {
        exp_sum_.assign(d_ * d_, 0.0);
        exp_alpha_.assign(d_ * d_, 0.0);
        exp_beta_.assign(d_ * d_, 0.0);
        has_exp_.assign(d_ * d_, false);
        step_.assign(d_ * d_, nullptr);
        window_span_.assign(d_, 0.0);
        windows_.resize(d_);
        for (int i = 0; i < d_; ++i) {
            for (int j = 0; j < d_; ++j) {
                const LinkKernel& k = model.kernel(i, j);
                if (const auto* e = std::get_if<ExponentialKernel>(&k)) {
                    if (e->alpha > 0.0) {
                        has_exp_[idx(i, j)] = true;
                        exp_alpha_[idx(i, j)] = e->alpha;
                        exp_beta_[idx(i, j)] = e->beta;
                    }
                } else if (const auto* s = std::get_if<StepKernel>(&k)) {
                    if (!kernel_is_zero(k)) {
                        step_[idx(i, j)] = s;
                        const double span = s->bin_width * static_cast<double>(s->levels.size());
                        if (span > window_span_[j]) window_span_[j] = span;
                    }
                }
            }
        }
    }

    double anchor() const { return anchor_; }

    /// lambda_i at time t > anchor (no event at t itself), without mutating.
    double intensity_at(int i, double t) const {
        const double dt = t - anchor_;
        double lambda = model_.baseline()[i];
        for (int j = 0; j < d_; ++j) {
            const std::size_t ij = idx(i, j);
            if (has_exp_[ij]) {
                lambda += exp_sum_[ij] * std::exp(-exp_beta_[ij] * dt);
            }
            if (step_[ij] != nullptr) {
                const StepKernel& s = *step_[ij];
                for (double tau : windows_[j]) {
                    lambda += step_level(s, t - tau);
                }
            }
        }
        return lambda;
    }

    /// Sum of right-limit intensities at the anchor; the thinning majorant.
    double bound() const {
        double total = 0.0;
        for (int i = 0; i < d_; ++i) {
            double lambda = model_.baseline()[i];
            for (int j = 0; j < d_; ++j) {
                const std::size_t ij = idx(i, j);
                lambda += exp_sum_[ij];
                if (step_[ij] != nullptr) {
                    const StepKernel& s = *step_[ij];
                    for (double tau : windows_[j]) {
                        lambda += step_level(s, anchor_ - tau);
                    }
                }
            }
            total += lambda;
        }
        return total;
    }

    /// Commit an accepted event of `component` at time t and re-anchor.
    void accept(int component, double t) {
        const double dt = t - anchor_;
        for (std::size_t ij = 0; ij < exp_sum_.size(); ++ij) {
            if (has_exp_[ij]) exp_sum_[ij] *= std::exp(-exp_beta_[ij] * dt);
        }
        for (int i = 0; i < d_; ++i) {
            const std::size_t ic = idx(i, component);
            if (has_exp_[ic]) exp_sum_[ic] += exp_alpha_[ic];
        }
        if (window_span_[component] > 0.0) {
            windows_[component].push_back(t);
        }
        anchor_ = t;
        for (int j = 0; j < d_; ++j) {
            auto& w = windows_[j];
            while (!w.empty() && anchor_ - w.front() >= window_span_[j]) w.pop_front();
        }
    }

private:
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * d_ + j; }

    const HawkesModel& model_;
    int d_;
    double anchor_;
    std::vector<double> exp_sum_, exp_alpha_, exp_beta_;
    std::vector<bool> has_exp_;
    std::vector<const StepKernel*> step_;
    std::vector<double> window_span_;
    std::vector<std::deque<double>> windows_;
};

} // namespace

EventStream simulate(const HawkesModel& model, const SimulationConfig& config) {
    if (!(config.horizon > 0.0) || !std::isfinite(config.horizon)) {
        throw std::invalid_argument("simulate: horizon must be finite and > 0");
    }
    if (config.max_events <= 0) {
        throw std::invalid_argument("simulate: max_events must be > 0");
    }
    const double rho = model.spectral_radius();
    if (!(rho < 1.0)) {
        throw NonStationaryError("simulate: spectral radius " + std::to_string(rho) +
                                 " is not below 1");
    }
    for (int i = 0; i < model.dim(); ++i) {
        for (int j = 0; j < model.dim(); ++j) {
            if (!kernel_is_nonincreasing(model.kernel(i, j))) {
                throw NonMonotoneKernelError(
                    "simulate: kernel (" + std::to_string(i) + "," + std::to_string(j) +
                    ") is not nonincreasing; the thinning bound would be invalid");
            }
        }
    }

    const int d = model.dim();
    Rng rng(config.seed);
    IntensityState state(model);
    std::vector<std::vector<double>> times(static_cast<std::size_t>(d));
    std::vector<double> lambdas(static_cast<std::size_t>(d));

    double bound = state.bound();
    double clock = 0.0;
    std::int64_t accepted = 0;
    while (true) {
        const double wait = rng.exponential(bound);
        const double candidate = clock + wait;
        if (candidate > config.horizon) break;
        if (!(candidate > clock)) continue; // timestamp collision: redraw

        double total = 0.0;
        for (int i = 0; i < d; ++i) {
            lambdas[static_cast<std::size_t>(i)] = state.intensity_at(i, candidate);
            total += lambdas[static_cast<std::size_t>(i)];
        }
        const double mark = rng.uniform() * bound;
        clock = candidate;
        if (mark >= total) continue; // rejected; the stale bound stays valid

        int component = 0;
        double cumulative = lambdas[0];
        while (component + 1 < d && mark >= cumulative) {
            ++component;
            cumulative += lambdas[static_cast<std::size_t>(component)];
        }
        times[static_cast<std::size_t>(component)].push_back(candidate);
        if (++accepted > config.max_events) {
            throw EventBudgetExceededError(
                "simulate: exceeded max_events = " + std::to_string(config.max_events) +
                "; the model may be near-critical");
        }
        state.accept(component, candidate);
        bound = state.bound();
    }
    return EventStream(config.horizon, std::move(times));
}

double total_intensity_bound(const HawkesModel& model, const EventStream& stream, double t) {
    double total = 0.0;
    for (int i = 0; i < model.dim(); ++i) {
        double lambda = model.baseline()[i];
        for (int j = 0; j < model.dim(); ++j) {
            const LinkKernel& k = model.kernel(i, j);
            if (kernel_is_zero(k)) continue;
            for (double tau : stream.times(j)) {
                if (tau > t) break;
                lambda += kernel_value_right(k, t - tau);
            }
        }
        total += lambda;
    }
    return total;
}

} // namespace hawkes
