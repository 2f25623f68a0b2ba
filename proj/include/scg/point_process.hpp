#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "scg/model.hpp"
#include "scg/random.hpp"

namespace scg {

using NodeId = std::int32_t;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double distance_sq(Vec2 a, Vec2 b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

double distance(Vec2 a, Vec2 b) noexcept;

struct Point {
  double x = 0.0;
  double y = 0.0;
  NodeId id = 0;

  Vec2 pos() const noexcept { return {x, y}; }
};

/// Points with dense ids 0..n-1 (point i has id i) inside a window.
struct PointSet {
  std::vector<Point> points;
  Window window;

  std::size_t size() const noexcept { return points.size(); }
  bool empty() const noexcept { return points.empty(); }
  const Point& operator[](NodeId id) const { return points[static_cast<std::size_t>(id)]; }
  bool contains_id(NodeId id) const noexcept {
    return id >= 0 && static_cast<std::size_t>(id) < points.size();
  }

  /// Builds a set from positions, assigning ids in order.
  static PointSet from_positions(std::span<const Vec2> positions, const Window& window);
};

/// Homogeneous PPP on `window`: Poisson(density · area) points placed
/// uniformly. Points listed in `fixed` come first (ids 0..fixed.size()-1),
/// which is how Palm-conditioned nodes are planted.
PointSet sample_ppp(double density, const Window& window, RandomStream& stream,
                    std::span<const Vec2> fixed = {});

/// Uniform grid index over a window for disk queries.
///
/// All disk memberships are strict: a point at exactly `radius` is outside.
class SpatialIndex {
 public:
  SpatialIndex() = default;
  SpatialIndex(const PointSet& points, double cell_size);

  double cell_size() const noexcept { return cell_size_; }
  std::size_t size() const noexcept { return xs_.size(); }

  /// Ids of indexed points strictly inside the disk, sorted ascending.
  std::vector<NodeId> neighbors_within(Vec2 center, double radius) const;

  /// True iff no indexed point other than `exclude` lies strictly inside.
  bool is_disk_empty(Vec2 center, double radius, std::span<const NodeId> exclude = {}) const;

  /// Calls `fn(id, dist_sq)` for every point strictly inside the disk, in
  /// bucket order. Stops early when `fn` returns false.
  template <typename Fn>
  bool visit_within(Vec2 center, double radius, Fn&& fn) const {
    if (!(radius > 0.0) || xs_.empty()) return true;
    const double r2 = radius * radius;
    const int cx0 = cell_x(center.x - radius), cx1 = cell_x(center.x + radius);
    const int cy0 = cell_y(center.y - radius), cy1 = cell_y(center.y + radius);
    for (int cy = cy0; cy <= cy1; ++cy) {
      for (int cx = cx0; cx <= cx1; ++cx) {
        const std::size_t cell = static_cast<std::size_t>(cy) * nx_ + static_cast<std::size_t>(cx);
        for (std::uint32_t k = cell_start_[cell]; k < cell_start_[cell + 1]; ++k) {
          const NodeId id = ids_[k];
          const double dx = xs_[id] - center.x;
          const double dy = ys_[id] - center.y;
          const double d2 = dx * dx + dy * dy;
          if (d2 < r2 && !fn(id, d2)) return false;
        }
      }
    }
    return true;
  }

 private:
  int cell_x(double x) const noexcept;
  int cell_y(double y) const noexcept;

  double cell_size_ = 1.0;
  double x0_ = 0.0;
  double y0_ = 0.0;
  std::size_t nx_ = 1;
  std::size_t ny_ = 1;
  std::vector<std::uint32_t> cell_start_{0, 0};
  std::vector<NodeId> ids_;
  std::vector<double> xs_;
  std::vector<double> ys_;
};

/// Default grid pitch so protocol disk queries touch at most 9 buckets.
double default_cell_size(const ModelParams& params) noexcept;

/// `id,x,y` CSV with a header row. Coordinates are written round-trip exact.
void write_points_csv(const PointSet& points, const std::filesystem::path& path);
PointSet read_points_csv(const std::filesystem::path& path, const Window& window);

}  // namespace scg
