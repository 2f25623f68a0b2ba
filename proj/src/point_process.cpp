#include "scg/point_process.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "scg/io.hpp"

namespace scg {

double distance(Vec2 a, Vec2 b) noexcept { return std::sqrt(distance_sq(a, b)); }

PointSet PointSet::from_positions(std::span<const Vec2> positions, const Window& window) {
  PointSet set;
  set.window = window;
  set.points.reserve(positions.size());
  for (const Vec2& v : positions)
    set.points.push_back({v.x, v.y, static_cast<NodeId>(set.points.size())});
  return set;
}

PointSet sample_ppp(double density, const Window& window, RandomStream& stream,
                    std::span<const Vec2> fixed) {
  if (!(density >= 0.0) || !std::isfinite(density))
    throw InvalidParam("density", "must be finite and >= 0");
  require_valid(window);
  PointSet set = PointSet::from_positions(fixed, window);
  for (const Point& pt : set.points)
    if (!window.contains(pt.x, pt.y)) throw GeometryError("fixed point outside the window");
  const std::uint64_t n = stream.poisson(density * window.area());
  set.points.reserve(set.points.size() + n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double x = stream.uniform(window.x_min, window.x_max);
    const double y = stream.uniform(window.y_min, window.y_max);
    set.points.push_back({x, y, static_cast<NodeId>(set.points.size())});
  }
  return set;
}

SpatialIndex::SpatialIndex(const PointSet& points, double cell_size) {
  const Window& w = points.window;
  // Keep the grid bounded for tiny pitches on big windows.
  constexpr double kMaxCells = 4.0e6;
  double pitch = cell_size > 0.0 ? cell_size : 1.0;
  while ((w.width() / pitch + 1.0) * (w.height() / pitch + 1.0) > kMaxCells) pitch *= 2.0;

  cell_size_ = pitch;
  x0_ = w.x_min;
  y0_ = w.y_min;
  nx_ = static_cast<std::size_t>(std::floor(w.width() / pitch)) + 1;
  ny_ = static_cast<std::size_t>(std::floor(w.height() / pitch)) + 1;

  const std::size_t n = points.size();
  xs_.resize(n);
  ys_.resize(n);
  std::vector<std::size_t> cell_of(n);
  cell_start_.assign(nx_ * ny_ + 1, 0);
  for (const Point& pt : points.points) {
    const auto i = static_cast<std::size_t>(pt.id);
    xs_[i] = pt.x;
    ys_[i] = pt.y;
    cell_of[i] = static_cast<std::size_t>(cell_y(pt.y)) * nx_ + static_cast<std::size_t>(cell_x(pt.x));
    ++cell_start_[cell_of[i] + 1];
  }
  for (std::size_t c = 0; c < nx_ * ny_; ++c) cell_start_[c + 1] += cell_start_[c];
  ids_.resize(n);
  std::vector<std::uint32_t> fill(cell_start_.begin(), cell_start_.end() - 1);
  for (std::size_t i = 0; i < n; ++i) ids_[fill[cell_of[i]]++] = static_cast<NodeId>(i);
}

int SpatialIndex::cell_x(double x) const noexcept {
  const double c = std::floor((x - x0_) / cell_size_);
  return static_cast<int>(std::clamp(c, 0.0, static_cast<double>(nx_ - 1)));
}

int SpatialIndex::cell_y(double y) const noexcept {
  const double c = std::floor((y - y0_) / cell_size_);
  return static_cast<int>(std::clamp(c, 0.0, static_cast<double>(ny_ - 1)));
}

std::vector<NodeId> SpatialIndex::neighbors_within(Vec2 center, double radius) const {
  std::vector<NodeId> out;
  visit_within(center, radius, [&](NodeId id, double) {
    out.push_back(id);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

bool SpatialIndex::is_disk_empty(Vec2 center, double radius, std::span<const NodeId> exclude) const {
  return visit_within(center, radius, [&](NodeId id, double) {
    return std::find(exclude.begin(), exclude.end(), id) != exclude.end();
  });
}

double default_cell_size(const ModelParams& params) noexcept {
  return params.eta * std::max({1.0, params.beta_e, params.beta_l});
}

void write_points_csv(const PointSet& points, const std::filesystem::path& path) {
  CsvWriter csv({"id", "x", "y"});
  for (const Point& pt : points.points) {
    csv.cell(pt.id).cell(pt.x).cell(pt.y);
    csv.end_row();
  }
  csv.save(path);
}

PointSet read_points_csv(const std::filesystem::path& path, const Window& window) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || trim(line) != "id,x,y")
    throw IoError(path.string() + ": expected header 'id,x,y'");
  PointSet set;
  set.window = window;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto cells = split(trim(line), ',');
    if (cells.size() != 3) throw IoError(path.string() + ": malformed row '" + line + "'");
    const auto id = static_cast<NodeId>(parse_double(cells[0]));
    if (id != static_cast<NodeId>(set.points.size()))
      throw IoError(path.string() + ": ids must be dense and ordered");
    set.points.push_back({parse_double(cells[1]), parse_double(cells[2]), id});
  }
  return set;
}

}  // namespace scg
