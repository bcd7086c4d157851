#include "hawkes/event_stream.hpp"

#include "hawkes/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hawkes {

EventStream::EventStream(double horizon, std::vector<std::vector<double>> times)
    : horizon_(horizon), times_(std::move(times)) {
    if (!(horizon_ > 0.0) || !std::isfinite(horizon_)) {
        throw std::invalid_argument("event stream: horizon must be finite and > 0");
    }
    if (times_.empty()) {
        throw std::invalid_argument("event stream: needs at least one component");
    }
    std::size_t total = 0;
    for (std::size_t i = 0; i < times_.size(); ++i) {
        const auto& ts = times_[i];
        for (std::size_t j = 0; j < ts.size(); ++j) {
            if (!(ts[j] > 0.0) || ts[j] > horizon_ || !std::isfinite(ts[j])) {
                throw std::invalid_argument("event stream: component " + std::to_string(i) +
                                            " has a time outside (0, horizon]");
            }
            if (j > 0 && !(ts[j] > ts[j - 1])) {
                throw std::invalid_argument("event stream: component " + std::to_string(i) +
                                            " times must strictly increase");
            }
        }
        total += ts.size();
    }
    // Simple process: no simultaneous jumps across components.
    std::vector<double> all;
    all.reserve(total);
    for (const auto& ts : times_) all.insert(all.end(), ts.begin(), ts.end());
    std::sort(all.begin(), all.end());
    for (std::size_t j = 1; j < all.size(); ++j) {
        if (all[j] == all[j - 1]) {
            throw std::invalid_argument("event stream: duplicate timestamp across components");
        }
    }
}

EventStream EventStream::from_records(int dim, double horizon,
                                      std::vector<std::pair<int, double>> records) {
    if (dim < 1) throw std::invalid_argument("event stream: dim must be >= 1");
    std::vector<std::vector<double>> times(static_cast<std::size_t>(dim));
    for (const auto& [component, t] : records) {
        if (component < 0 || component >= dim) {
            throw ComponentOutOfRangeError("event stream: component id " +
                                           std::to_string(component) + " out of range");
        }
        times[static_cast<std::size_t>(component)].push_back(t);
    }
    for (auto& ts : times) std::sort(ts.begin(), ts.end());
    return EventStream(horizon, std::move(times));
}

const std::vector<double>& EventStream::times(int component) const {
    if (component < 0 || component >= dim()) {
        throw ComponentOutOfRangeError("event stream: component " + std::to_string(component) +
                                       " out of range");
    }
    return times_[static_cast<std::size_t>(component)];
}

std::int64_t EventStream::total_events() const {
    std::int64_t n = 0;
    for (const auto& ts : times_) n += static_cast<std::int64_t>(ts.size());
    return n;
}

} // namespace hawkes
