#include "scg/split_routing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "scg/errors.hpp"
#include "scg/io.hpp"
#include "scg/parallel.hpp"
#include "scg/percolation.hpp"

namespace scg {

std::string_view to_string(RouteKind kind) noexcept {
  return kind == RouteKind::direct ? "direct" : "split";
}

std::vector<NodeId> eavesdrop_exposure(std::span<const std::pair<NodeId, std::uint64_t>> itinerary,
                                       const NetworkRealization& r) {
  std::vector<NodeId> out;
  for (std::size_t i = 1; i < itinerary.size(); ++i) {
    const Vec2 x = r.position(itinerary[i - 1].first);
    const double d = distance(x, r.position(itinerary[i].first));
    r.ed_index.visit_within(x, r.params.beta_e * d, [&](NodeId e, double) {
      out.push_back(e);
      return true;
    });
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_two_secure(const PathResult& a, const PathResult& b, const NetworkRealization& r) {
  const auto ea = eavesdrop_exposure(a.itinerary, r);
  const auto eb = eavesdrop_exposure(b.itinerary, r);
  std::vector<NodeId> both;
  std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(both));
  return both.empty();
}

SplitRoute two_secure_route(const NetworkRealization& r, NodeId src, NodeId dst,
                            const SimConfig& config, const RandomStream& stream,
                            const SplitOptions& options) {
  require_valid(config);
  for (NodeId v : {src, dst})
    if (!r.legit.contains_id(v)) throw UnknownNode("no legitimate node with id " + std::to_string(v));
  const RoleSchedule schedule(stream, r.params.p);
  const std::size_t n = r.node_count();

  SplitRoute out;
  out.direct = earliest_arrival(LinkTable::build(r), schedule, src, dst, config.slot_cap);

  const double guard = options.guard(r.params);
  const double sep2 = options.sep(r.params) * options.sep(r.params);
  const Vec2 ps = r.position(src), pd = r.position(dst);
  std::vector<std::uint8_t> guarded(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 q = r.position(static_cast<NodeId>(i));
    guarded[i] = distance(q, ps) < guard || distance(q, pd) < guard;
  }
  const LinkTable relaxed = LinkTable::build(r, [&](NodeId x) { return guarded[static_cast<std::size_t>(x)] != 0; });

  const PathResult a = earliest_arrival(relaxed, schedule, src, dst, config.slot_cap);
  bool split_ok = false;
  PathResult b;
  if (!a.censored) {
    std::vector<Vec2> a_tx;
    for (std::size_t i = 0; i + 1 < a.itinerary.size(); ++i) {
      const NodeId x = a.itinerary[i].first;
      if (!guarded[static_cast<std::size_t>(x)]) a_tx.push_back(r.position(x));
    }
    std::vector<std::uint8_t> allowed(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
      if (guarded[i]) continue;
      const Vec2 q = r.position(static_cast<NodeId>(i));
      for (const Vec2& t : a_tx)
        if (!(distance_sq(q, t) > sep2)) {
          allowed[i] = 0;
          break;
        }
    }
    b = earliest_arrival(relaxed, schedule, src, dst, config.slot_cap, allowed);
    split_ok = !b.censored && is_two_secure(a, b, r);
  }

  const std::uint64_t split_delay = split_ok ? std::max(a.delay, b.delay) : 0;
  if (split_ok && (out.direct.censored || split_delay < out.direct.delay)) {
    out.kind = RouteKind::split;
    out.path_a = a;
    out.path_b = b;
    out.delay = split_delay;
    out.censored = false;
  } else {
    out.kind = RouteKind::direct;
    out.path_a = out.direct;
    out.delay = out.direct.delay;
    out.censored = out.direct.censored;
  }
  return out;
}

bool split_tile_certificate(const NetworkRealization& r, Vec2 src, Vec2 dst) {
  const double s = r.params.eta / std::numbers::sqrt3;
  const double m = r.params.beta_e * r.params.eta;
  const double d = distance(src, dst);
  if (d < s) throw GeometryError("endpoints closer than one tile");
  const long long ns = static_cast<long long>(std::ceil(d / s));
  const double len = static_cast<double>(ns) * s;

  auto in_box = [](Vec2 q, double x0, double x1, double y0, double y1) {
    return q.x >= x0 && q.x <= x1 && q.y >= y0 && q.y <= y1;
  };
  for (const Point& e : r.eds.points) {
    const Vec2 q = corridor_frame(src, dst, e.pos());
    const Vec2 mq{len - q.x, q.y};  // mirrored onto the source side
    for (const Vec2& v : {q, mq}) {
      if (in_box(v, -m, 4 * s + m, -s / 2 - m, s / 2 + m)) return false;
      if (in_box(v, -m, s + m, -s / 2 - m, 4.5 * s + m)) return false;
    }
  }

  // Tile (column, row): bottom row 0, columns rows 1..4, top row 5.
  auto tile_index = [&](long long col, long long row) -> long long {
    if (row == 0) return col;
    if (row == 5) return ns + col;
    if (col == 0) return 2 * ns + (row - 1);
    if (col == ns - 1) return 2 * ns + 4 + (row - 1);
    return -1;
  };
  std::vector<std::uint8_t> occupied(static_cast<std::size_t>(2 * ns + 8), 0);
  if (ns == 1) std::fill(occupied.begin() + 2 * ns + 4, occupied.end(), 1);  // one shared column
  for (const Point& pt : r.legit.points) {
    const Vec2 q = corridor_frame(src, dst, pt.pos());
    if (q.x < 0.0 || q.x >= len || q.y < -s / 2 || q.y >= 5.5 * s) continue;
    const auto col = static_cast<long long>(std::floor(q.x / s));
    const auto row = static_cast<long long>(std::floor((q.y + s / 2) / s));
    const long long t = tile_index(col, row);
    if (t >= 0) occupied[static_cast<std::size_t>(t)] = 1;
  }
  return std::all_of(occupied.begin(), occupied.end(), [](std::uint8_t o) { return o != 0; });
}

NetworkRealization ed_wall_fixture(const ModelParams& params) {
  const double h = params.eta / 2.0;
  const Window w{0.0, 0.0, 12 * h, 8 * h, 0.0};
  std::vector<Vec2> legit{{h, 4 * h}, {11 * h, 4 * h}};
  for (int i = 1; i <= 11; ++i)
    for (int j = 1; j <= 7; ++j)
      if (!((i == 1 || i == 11) && j == 4)) legit.push_back({i * h, j * h});
  std::vector<Vec2> eds;
  const double wall_x = 6.5 * h;
  for (double y = 0.0; y <= 8 * h + 1e-12; y += h / 10) eds.push_back({wall_x, y});
  return NetworkRealization::from_points(params, PointSet::from_positions(legit, w),
                                         PointSet::from_positions(eds, w));
}

std::vector<SplitRow> split_compare_experiment(const ModelParams& params, const SimConfig& config,
                                               double dist, const Window& window,
                                               const SplitOptions& options) {
  require_valid(params);
  require_valid(config);
  require_valid(window);
  std::vector<SplitRow> rows(config.trials);
  parallel_for(config.trials, config.workers, [&](std::size_t trial) {
    const RandomStream stream = RandomStream::for_trial(config.seed, trial);
    const NetworkRealization r = NetworkRealization::sample(params, window, stream);
    SplitRow& row = rows[trial];
    row.trial = trial;
    if (r.node_count() == 0) {
      row.route.censored = true;
      row.route.delay = config.slot_cap;
      row.route.direct.censored = true;
      row.route.direct.delay = config.slot_cap;
      row.route.path_a = row.route.direct;
      return;
    }
    const ComponentReport rep = components(potential_graph(r), r.legit, params.eta);
    const NodeId src = nearest_component_node(r, {0.0, 0.0}, rep.largest);
    const NodeId dst = nearest_component_node(r, {dist, 0.0}, rep.largest);
    row.route = two_secure_route(r, src, dst, config, stream, options);
  });
  return rows;
}

void write_split_csv(std::span<const SplitRow> rows, const std::filesystem::path& path) {
  CsvWriter csv({"trial", "kind", "delay", "hops_a", "hops_b", "censored"});
  for (const SplitRow& row : rows) {
    const SplitRoute& r = row.route;
    csv.cell(row.trial).cell(to_string(r.kind)).cell(r.delay).cell(r.path_a.hops)
        .cell(r.path_b ? r.path_b->hops : std::size_t{0}).cell(r.censored);
    csv.end_row();
  }
  csv.save(path);
}

void write_direct_csv(std::span<const SplitRow> rows, const std::filesystem::path& path) {
  CsvWriter csv({"trial", "delay", "hops", "censored"});
  for (const SplitRow& row : rows) {
    csv.cell(row.trial).cell(row.route.direct.delay).cell(row.route.direct.hops).cell(row.route.direct.censored);
    csv.end_row();
  }
  csv.save(path);
}

}  // namespace scg
