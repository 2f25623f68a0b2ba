#include "scg/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>

#include "scg/errors.hpp"
#include "scg/io.hpp"
#include "scg/parallel.hpp"

namespace scg {

bool UndirectedGraph::has_edge(NodeId a, NodeId b) const {
  const auto n = neighbors(a);
  return std::binary_search(n.begin(), n.end(), b);
}

UndirectedGraph potential_graph(const NetworkRealization& r) {
  const std::size_t n = r.node_count();
  const double eta = r.params.eta;
  const double be = r.params.beta_e;
  // Squared distance from each node to its nearest eavesdropper within β_e η.
  // A link of length d is blocked at x iff β_e² d² exceeds it.
  std::vector<double> ed_d2(n, std::numeric_limits<double>::infinity());
  if (be > 0.0 && !r.eds.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      r.ed_index.visit_within(r.position(static_cast<NodeId>(i)), be * eta, [&](NodeId, double d2) {
        ed_d2[i] = std::min(ed_d2[i], d2);
        return true;
      });
    }
  }
  UndirectedGraph g;
  g.offsets.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = static_cast<NodeId>(i);
    for (NodeId y : r.legit_index.neighbors_within(r.position(x), eta)) {
      if (y == x) continue;
      const double d = distance(r.position(x), r.position(y));
      const double r2 = (be * d) * (be * d);
      if (ed_d2[i] < r2 || ed_d2[static_cast<std::size_t>(y)] < r2) continue;
      g.adjacency.push_back(y);
    }
    g.offsets.push_back(static_cast<std::uint32_t>(g.adjacency.size()));
  }
  return g;
}

DisjointSets::DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t v) {
  std::size_t root = v;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[v] != root) {
    const std::size_t next = parent_[v];
    parent_[v] = root;
    v = next;
  }
  return root;
}

bool DisjointSets::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  if (rank_[a] == rank_[b]) ++rank_[a];
  return true;
}

ComponentReport components(const UndirectedGraph& graph, const PointSet& points, double eta) {
  const std::size_t n = graph.node_count();
  DisjointSets sets(n);
  for (std::size_t i = 0; i < n; ++i)
    for (NodeId y : graph.neighbors(static_cast<NodeId>(i))) sets.unite(i, static_cast<std::size_t>(y));

  std::vector<std::size_t> size_of_root(n, 0);
  for (std::size_t i = 0; i < n; ++i) ++size_of_root[sets.find(i)];
  // Components ordered by size, then by smallest member, so labels are stable.
  std::vector<std::size_t> roots;
  std::vector<std::size_t> first_member(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = sets.find(i);
    if (first_member[root] == n) {
      first_member[root] = i;
      roots.push_back(root);
    }
  }
  std::sort(roots.begin(), roots.end(), [&](std::size_t a, std::size_t b) {
    if (size_of_root[a] != size_of_root[b]) return size_of_root[a] > size_of_root[b];
    return first_member[a] < first_member[b];
  });
  std::vector<std::uint32_t> label_of_root(n, 0);
  ComponentReport rep;
  for (std::size_t k = 0; k < roots.size(); ++k) {
    label_of_root[roots[k]] = static_cast<std::uint32_t>(k);
    rep.component_sizes.push_back(size_of_root[roots[k]]);
  }
  rep.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) rep.labels[i] = label_of_root[sets.find(i)];
  rep.largest_fraction = n ? static_cast<double>(rep.component_sizes.front()) / static_cast<double>(n) : 0.0;
  for (std::size_t i = 0; i < n; ++i)
    if (rep.labels[i] == 0) rep.largest.push_back(static_cast<NodeId>(i));

  const Window core = points.window.core();
  std::vector<std::uint8_t> touches(roots.size(), 0);  // bits: left, right, bottom, top
  for (std::size_t i = 0; i < n; ++i) {
    const Point& pt = points.points[i];
    std::uint8_t bits = 0;
    if (pt.x < core.x_min + eta) bits |= 1;
    if (pt.x > core.x_max - eta) bits |= 2;
    if (pt.y < core.y_min + eta) bits |= 4;
    if (pt.y > core.y_max - eta) bits |= 8;
    touches[rep.labels[i]] |= bits;
  }
  for (std::uint8_t t : touches) {
    if ((t & 3) == 3) rep.crossing_left_right = true;
    if ((t & 12) == 12) rep.crossing_bottom_top = true;
  }
  return rep;
}

std::vector<NodeId> shortest_path(const UndirectedGraph& graph, NodeId a, NodeId b,
                                  std::span<const std::uint8_t> allowed) {
  const std::size_t n = graph.node_count();
  auto ok = [&](NodeId v) { return allowed.empty() || allowed[static_cast<std::size_t>(v)] != 0; };
  if (!ok(a) || !ok(b)) return {};
  std::vector<NodeId> pred(n, -1);
  std::vector<std::uint8_t> seen(n, 0);
  std::deque<NodeId> queue{a};
  seen[static_cast<std::size_t>(a)] = 1;
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    if (v == b) break;
    for (NodeId w : graph.neighbors(v)) {
      if (seen[static_cast<std::size_t>(w)] || !ok(w)) continue;
      seen[static_cast<std::size_t>(w)] = 1;
      pred[static_cast<std::size_t>(w)] = v;
      queue.push_back(w);
    }
  }
  if (!seen[static_cast<std::size_t>(b)]) return {};
  std::vector<NodeId> path{b};
  while (path.back() != a) path.push_back(pred[static_cast<std::size_t>(path.back())]);
  std::reverse(path.begin(), path.end());
  return path;
}

Vec2 corridor_frame(Vec2 src, Vec2 dst, Vec2 q) {
  const double d = distance(src, dst);
  if (!(d > 0.0)) throw GeometryError("corridor endpoints coincide");
  const double ex = (dst.x - src.x) / d, ey = (dst.y - src.y) / d;
  const double qx = q.x - src.x, qy = q.y - src.y;
  return {qx * ex + qy * ey, -qx * ey + qy * ex};
}

namespace {

struct NspGeometry {
  double s = 0.0;
  double m = 0.0;
  long long n_s = 1;
};

NspGeometry nsp_geometry(const ModelParams& prm, Vec2 src, Vec2 dst) {
  NspGeometry g;
  g.s = prm.eta / std::numbers::sqrt3;
  g.m = prm.beta_e * prm.eta;
  g.n_s = std::max(1LL, static_cast<long long>(std::ceil(distance(src, dst) / g.s)));
  return g;
}

long long tile_of(const NspGeometry& g, Vec2 local) {
  if (local.y < -g.s / 2 || local.y >= g.s / 2 || local.x < 0.0) return -1;
  const auto i = static_cast<long long>(std::floor(local.x / g.s));
  return i < g.n_s ? i : -1;
}

}  // namespace

bool tile_certificate_nsp(const NetworkRealization& r, Vec2 src, Vec2 dst) {
  const NspGeometry g = nsp_geometry(r.params, src, dst);
  const double len = static_cast<double>(g.n_s) * g.s;
  for (const Point& e : r.eds.points) {
    const Vec2 q = corridor_frame(src, dst, e.pos());
    if (q.x >= -g.m && q.x <= len + g.m && q.y >= -g.s / 2 - g.m && q.y <= g.s / 2 + g.m) return false;
  }
  std::vector<std::uint8_t> occupied(static_cast<std::size_t>(g.n_s), 0);
  for (const Point& pt : r.legit.points) {
    const long long t = tile_of(g, corridor_frame(src, dst, pt.pos()));
    if (t >= 0) occupied[static_cast<std::size_t>(t)] = 1;
  }
  return std::all_of(occupied.begin(), occupied.end(), [](std::uint8_t o) { return o != 0; });
}

std::vector<std::uint8_t> tile_strip_mask(const NetworkRealization& r, Vec2 src, Vec2 dst) {
  const NspGeometry g = nsp_geometry(r.params, src, dst);
  std::vector<std::uint8_t> mask(r.node_count(), 0);
  for (const Point& pt : r.legit.points)
    mask[static_cast<std::size_t>(pt.id)] = tile_of(g, corridor_frame(src, dst, pt.pos())) >= 0;
  return mask;
}

std::vector<PercolationRow> percolation_sweep(const ModelParams& base,
                                              std::span<const std::pair<double, double>> densities,
                                              const Window& window, const SimConfig& config) {
  require_valid(base);
  require_valid(window);
  require_valid(config);
  const std::size_t cells = densities.size();
  std::vector<PercolationRow> rows(cells * config.trials);
  parallel_for(rows.size(), config.workers, [&](std::size_t job) {
    const std::size_t cell = job / config.trials;
    const std::uint64_t trial = job % config.trials;
    ModelParams prm = base;
    prm.lambda_l = densities[cell].first;
    prm.lambda_e = densities[cell].second;
    const RandomStream stream = RandomStream::for_trial(config.seed, trial).substream(cell);
    const NetworkRealization r = NetworkRealization::sample(prm, window, stream);
    const ComponentReport rep = components(potential_graph(r), r.legit, prm.eta);
    PercolationRow& row = rows[job];
    row.lambda_l = prm.lambda_l;
    row.lambda_e = prm.lambda_e;
    row.ratio = prm.lambda_e > 0.0 ? prm.lambda_l / prm.lambda_e : std::numeric_limits<double>::infinity();
    row.trial = trial;
    row.crossing = rep.crossing_left_right;
    row.largest_fraction = rep.largest_fraction;
  });
  return rows;
}

std::vector<PercolationCell> summarize(std::span<const PercolationRow> rows) {
  std::vector<PercolationCell> cells;
  std::map<std::pair<double, double>, std::size_t> index;
  for (const PercolationRow& row : rows) {
    const auto key = std::make_pair(row.lambda_l, row.lambda_e);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, cells.size()).first;
      cells.push_back({row.lambda_l, row.lambda_e, {}, {}});
    }
    cells[it->second].crossing.add(row.crossing ? 1.0 : 0.0);
    cells[it->second].largest_fraction.add(row.largest_fraction);
  }
  return cells;
}

void write_percolation_csv(std::span<const PercolationRow> rows, const std::filesystem::path& path) {
  CsvWriter csv({"ratio", "lambda_l", "lambda_e", "trial", "crossing", "largest_fraction"});
  for (const PercolationRow& row : rows) {
    csv.cell(row.ratio).cell(row.lambda_l).cell(row.lambda_e).cell(row.trial).cell(row.crossing).cell(row.largest_fraction);
    csv.end_row();
  }
  csv.save(path);
}

}  // namespace scg
