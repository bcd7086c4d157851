#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace hawkes {

/// A realization of a multivariate point process on the window (0, horizon].
///
/// Times are strictly increasing within each component, and no two events
/// share a timestamp across components (simple process). Immutable after
/// construction.
class EventStream {
public:
    /// Validating constructor; throws std::invalid_argument on violations.
    EventStream(double horizon, std::vector<std::vector<double>> times);

    /// Build from unsorted (component, time) records, 0-based components.
    static EventStream from_records(int dim, double horizon,
                                    std::vector<std::pair<int, double>> records);

    int dim() const { return static_cast<int>(times_.size()); }
    double horizon() const { return horizon_; }
    const std::vector<double>& times(int component) const;
    std::int64_t total_events() const;

private:
    double horizon_;
    std::vector<std::vector<double>> times_;
};

} // namespace hawkes
