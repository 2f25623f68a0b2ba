#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "scg/model.hpp"
#include "scg/protocol.hpp"
#include "scg/temporal_routing.hpp"

namespace scg {

enum class RouteKind { direct, split };

std::string_view to_string(RouteKind kind) noexcept;

struct SplitRoute {
  RouteKind kind = RouteKind::direct;
  PathResult path_a;
  std::optional<PathResult> path_b;
  std::uint64_t delay = 0;
  bool censored = false;
  PathResult direct;  ///< the direct candidate, kept for comparisons
};

struct SplitOptions {
  double endpoint_guard = -1.0;  ///< default 2η
  double separation = -1.0;      ///< default 2β_eη

  double guard(const ModelParams& p) const { return endpoint_guard >= 0.0 ? endpoint_guard : 2.0 * p.eta; }
  double sep(const ModelParams& p) const { return separation >= 0.0 ? separation : 2.0 * p.beta_e * p.eta; }
};

/// Eavesdroppers strictly inside B(x, β_e‖x−y‖) for some hop x→y, sorted.
std::vector<NodeId> eavesdrop_exposure(std::span<const std::pair<NodeId, std::uint64_t>> itinerary,
                                       const NetworkRealization& realization);

/// No eavesdropper decodes a hop of both paths.
bool is_two_secure(const PathResult& a, const PathResult& b, const NetworkRealization& realization);

/// Better of the direct route and a corridor split pair. Path A relaxes (C3)
/// outside the guard disks around src and dst; path B additionally keeps
/// every forwarding node outside the guards farther than the separation from
/// each of A's forwarding nodes outside the guards. The pair is used only if
/// it is two-secure. Ties go to the direct route.
SplitRoute two_secure_route(const NetworkRealization& realization, NodeId src, NodeId dst,
                            const SimConfig& config, const RandomStream& stream,
                            const SplitOptions& options = {});

/// Two-path tile construction between src and dst with tile side η/√3: a
/// bottom row of n_s tiles along the axis, columns of four tiles above both
/// end tiles and a top row of n_s tiles. True iff both endpoint regions are
/// eavesdropper-free and every tile holds a legitimate node. Throws
/// GeometryError when the endpoints are closer than one tile.
bool split_tile_certificate(const NetworkRealization& realization, Vec2 src, Vec2 dst);

/// Walled fixture: a square lattice of legitimate nodes, spacing η/2, and a
/// dense line of eavesdroppers across the whole height midway between the
/// endpoints. Node 0 is the source and node 1 the destination.
NetworkRealization ed_wall_fixture(const ModelParams& params);

struct SplitRow {
  std::uint64_t trial = 0;
  SplitRoute route;
};

/// Per trial: one realization, anchors (0,0) and (distance,0) snapped to the
/// largest potential-graph component, one two_secure_route call.
std::vector<SplitRow> split_compare_experiment(const ModelParams& params, const SimConfig& config,
                                               double distance,
                                               const Window& window = default_delay_window(),
                                               const SplitOptions& options = {});

/// `trial,kind,delay,hops_a,hops_b,censored`
void write_split_csv(std::span<const SplitRow> rows, const std::filesystem::path& path);
/// `trial,delay,hops,censored` for the direct candidate.
void write_direct_csv(std::span<const SplitRow> rows, const std::filesystem::path& path);

}  // namespace scg
