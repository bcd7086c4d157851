#pragma once

#include "hawkes/estimate.hpp"
#include "hawkes/event_stream.hpp"
#include "hawkes/gof.hpp"
#include "hawkes/model.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hawkes {

/// Shortest round-trip decimal rendering (17 significant digits), fixed "."
/// decimal mark regardless of locale.
std::string format_double(double value);

/// Event table: header "component,time", then one "id,timestamp" row per
/// event with 1-based integer component ids and positive decimal timestamps.
/// Rows need not be sorted; duplicate (component, timestamp) pairs and
/// nonpositive timestamps are rejected.
struct EventRecords {
    int max_component = 0; // largest id seen
    std::vector<std::pair<int, double>> records; // 0-based component ids
};

EventRecords read_event_records(const std::string& path);

/// Convenience wrapper: build the stream directly. dim/horizon of 0 mean
/// "infer from the data" (largest component id, largest timestamp).
EventStream read_event_file(const std::string& path, int dim = 0, double horizon = 0.0);

void write_event_file(const std::string& path, const EventStream& stream);

/// Model description, JSON with a schema marker:
///   {"schema": 1, "nu": [...], "phi": [[{"type": ...}, ...], ...]}
/// Kernel objects: {"type":"zero"} |
///   {"type":"exponential","alpha":a,"beta":b} |
///   {"type":"step","bin_width":h,"levels":[...]}.
HawkesModel read_model_json(const std::string& path);
void write_model_json(const std::string& path, const HawkesModel& model);

/// Fitted-estimate artifact, JSON with h, k, both baselines, the raw
/// coefficient block, and fit diagnostics. Round-trips through
/// read_estimate_json.
void write_estimate_json(const std::string& path, const LinkEstimate& estimate);
LinkEstimate read_estimate_json(const std::string& path);

/// Plot data for the step estimate: one "i,j,u_midpoint,phi_hat" row per
/// (entry, lag bin), 1-based components.
void write_step_csv(const std::string& path, const LinkEstimate& estimate);

/// Residual quantile table: "component,p,empirical,theoretical,band_lo,band_hi".
void write_quantile_csv(const std::string& path, const QuantileReport& report);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace hawkes
