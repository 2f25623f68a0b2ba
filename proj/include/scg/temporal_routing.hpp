#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "scg/model.hpp"
#include "scg/protocol.hpp"
#include "scg/stats.hpp"

namespace scg {

/// A routed packet. The itinerary starts at (src, 0); each later entry is the
/// receiving node and the slot of the hop. Censored results carry
/// delay == slot_cap and an empty itinerary.
struct PathResult {
  std::uint64_t delay = 0;
  std::size_t hops = 0;
  std::vector<std::pair<NodeId, std::uint64_t>> itinerary;
  bool censored = false;
};

/// Minimum-delay causal path from src over slots 1..slot_cap using the links
/// of `table` under `schedule`. Among minimum-delay paths the one with the
/// fewest hops is returned, ties broken by the lowest predecessor id. When
/// `tx_allowed` is non-empty only nodes flagged in it may forward.
PathResult earliest_arrival(const LinkTable& table, const RoleSchedule& schedule, NodeId src,
                            NodeId dst, std::uint64_t slot_cap,
                            std::span<const std::uint8_t> tx_allowed = {});

/// Single-source form: one result per entry of `dsts`, from one search.
std::vector<PathResult> earliest_arrival_many(const LinkTable& table, const RoleSchedule& schedule,
                                              NodeId src, std::span<const NodeId> dsts,
                                              std::uint64_t slot_cap,
                                              std::span<const std::uint8_t> tx_allowed = {});

/// Builds the link table and role schedule from `stream` and routes.
PathResult earliest_arrival(const NetworkRealization& realization, NodeId src, NodeId dst,
                            const SimConfig& config, const RandomStream& stream);

/// Component node nearest to `point`; ties go to the lowest id.
NodeId nearest_component_node(const NetworkRealization& realization, Vec2 point,
                              std::span<const NodeId> component);

/// Every consecutive triple (x, y, z) of the itinerary has ‖x−z‖ > zeta.
bool zeta_path_check(std::span<const std::pair<NodeId, std::uint64_t>> itinerary,
                     const PointSet& positions, double zeta);
bool zeta_path_check(std::span<const NodeId> nodes, const PointSet& positions, double zeta);

/// Window used by the delay experiment when none is given: 20 × 20 with the
/// anchors on its horizontal mid-line.
Window default_delay_window();

struct DelayRow {
  double distance = 0.0;
  double p = 0.0;
  double eta = 0.0;
  std::uint64_t trial = 0;
  PathResult result;
};

struct DelaySummary {
  double distance = 0.0;
  RunningStats delay;  ///< non-censored trials only
  std::size_t trials = 0;
  std::size_t censored = 0;
  double censor_rate() const noexcept {
    return trials ? static_cast<double>(censored) / static_cast<double>(trials) : 0.0;
  }
};

/// Per trial: one realization, anchors (0,0) and (d,0) snapped to the nearest
/// nodes of the largest potential-graph component, one routing search from the
/// source anchor to all destination anchors.
std::vector<DelayRow> delay_vs_distance_experiment(const ModelParams& params, const SimConfig& config,
                                                   std::span<const double> distances,
                                                   const Window& window = default_delay_window());

std::vector<DelaySummary> summarize(std::span<const DelayRow> rows);

/// Fit of mean delay against distance over the summaries with data.
FitResult delay_fit(std::span<const DelaySummary> summaries);

void write_delay_csv(std::span<const DelayRow> rows, const std::filesystem::path& path);

}  // namespace scg
