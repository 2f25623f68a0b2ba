#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "scg/analytics.hpp"
#include "scg/model.hpp"
#include "scg/protocol.hpp"
#include "scg/stats.hpp"

namespace scg {

/// Compressed undirected adjacency; neighbour lists are sorted.
struct UndirectedGraph {
  std::vector<std::uint32_t> offsets{0};
  std::vector<NodeId> adjacency;

  std::size_t node_count() const noexcept { return offsets.size() - 1; }
  std::size_t edge_count() const noexcept { return adjacency.size() / 2; }
  std::span<const NodeId> neighbors(NodeId v) const {
    const auto i = static_cast<std::size_t>(v);
    return {adjacency.data() + offsets[i], adjacency.data() + offsets[i + 1]};
  }
  bool has_edge(NodeId a, NodeId b) const;
};

/// {x, y} is an edge iff ‖x−y‖ < η and neither B(x, β_e‖x−y‖) nor
/// B(y, β_e‖x−y‖) holds an eavesdropper. Interference and ALOHA are ignored.
UndirectedGraph potential_graph(const NetworkRealization& realization);

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n);
  std::size_t find(std::size_t v);
  bool unite(std::size_t a, std::size_t b);

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::uint32_t> rank_;
};

struct ComponentReport {
  std::vector<std::size_t> component_sizes;  ///< descending
  double largest_fraction = 0.0;
  bool crossing_left_right = false;
  bool crossing_bottom_top = false;
  std::vector<std::uint32_t> labels;  ///< component index per node, 0 = largest
  std::vector<NodeId> largest;        ///< members of the largest component, sorted
};

/// Connected components. A crossing needs one component with nodes within η
/// of both opposite edges of the window core.
ComponentReport components(const UndirectedGraph& graph, const PointSet& points, double eta);

/// Fewest-edge path from a to b using only nodes with allowed[v] != 0 (all
/// nodes when `allowed` is empty). Ties prefer lower ids. Empty when none.
std::vector<NodeId> shortest_path(const UndirectedGraph& graph, NodeId a, NodeId b,
                                  std::span<const std::uint8_t> allowed = {});

/// Coordinates of q in the frame with `src` at the origin and `dst` on the
/// positive first axis.
Vec2 corridor_frame(Vec2 src, Vec2 dst, Vec2 q);

/// Tiles of side s = η/√3 along src→dst, with an eavesdropper-free margin of
/// β_e η around them. True iff the margin rectangle holds no eavesdropper and
/// every centre tile holds a legitimate node.
bool tile_certificate_nsp(const NetworkRealization& realization, Vec2 src, Vec2 dst);

/// Legitimate nodes lying in the certificate's centre tiles.
std::vector<std::uint8_t> tile_strip_mask(const NetworkRealization& realization, Vec2 src, Vec2 dst);

struct PercolationRow {
  double ratio = 0.0;
  double lambda_l = 0.0;
  double lambda_e = 0.0;
  std::uint64_t trial = 0;
  bool crossing = false;
  double largest_fraction = 0.0;
};

struct PercolationCell {
  double lambda_l = 0.0;
  double lambda_e = 0.0;
  RunningStats crossing;
  RunningStats largest_fraction;
};

/// One cell per (λ_l, λ_e) pair, config.trials realizations per cell. The
/// crossing reported is left-to-right.
std::vector<PercolationRow> percolation_sweep(const ModelParams& base,
                                              std::span<const std::pair<double, double>> densities,
                                              const Window& window, const SimConfig& config);

std::vector<PercolationCell> summarize(std::span<const PercolationRow> rows);

void write_percolation_csv(std::span<const PercolationRow> rows, const std::filesystem::path& path);

}  // namespace scg
