#pragma once

#include "hawkes/event_stream.hpp"
#include "hawkes/model.hpp"

#include <cstdint>

namespace hawkes {

struct SimulationConfig {
    double horizon = 0.0;                  // > 0
    std::uint64_t seed = 0;
    std::int64_t max_events = 10'000'000;  // safety cap, > 0
};

/// Exact sampling by thinning. The dominating rate is piecewise constant and
/// refreshed at every accepted event, which bounds the intensity until the
/// next event because all kernels are required to be nonincreasing on
/// (0, inf).
///
/// Deterministic given (model, seed): one mt19937_64 stream per run, one
/// exponential draw (waiting time) and one uniform draw (accept + component
/// attribution) per candidate. A candidate whose timestamp collides with the
/// current clock under floating point is redrawn, so streams stay simple.
///
/// Throws NonStationaryError, NonMonotoneKernelError, or
/// EventBudgetExceededError.
EventStream simulate(const HawkesModel& model, const SimulationConfig& config);

/// Sum over components of the intensity immediately after time t, i.e. with
/// every lag evaluated at its right limit. For nonincreasing kernels this
/// bounds the summed intensity on (t, next event).
double total_intensity_bound(const HawkesModel& model, const EventStream& stream, double t);

} // namespace hawkes
