#include "scg/temporal_routing.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "scg/errors.hpp"
#include "scg/io.hpp"
#include "scg/parallel.hpp"
#include "scg/percolation.hpp"

namespace scg {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

// A node's best (fewest-hop) arrival so far; a new label is pushed whenever
// the hop count improves.
struct Label {
  std::uint64_t slot;
  std::uint32_t hops;
  NodeId node;
  std::uint32_t pred;  // index into the label list
};

PathResult censored_result(std::uint64_t slot_cap) {
  PathResult r;
  r.delay = slot_cap;
  r.censored = true;
  return r;
}

PathResult unwind(const std::vector<Label>& labels, std::uint32_t idx) {
  PathResult r;
  r.delay = labels[idx].slot;
  r.hops = labels[idx].hops;
  for (std::uint32_t i = idx; i != kNone; i = labels[i].pred)
    r.itinerary.emplace_back(labels[i].node, labels[i].slot);
  std::reverse(r.itinerary.begin(), r.itinerary.end());
  return r;
}

void check_id(const LinkTable& table, NodeId id) {
  if (id < 0 || static_cast<std::size_t>(id) >= table.node_count())
    throw UnknownNode("no legitimate node with id " + std::to_string(id));
}

}  // namespace

std::vector<PathResult> earliest_arrival_many(const LinkTable& table, const RoleSchedule& schedule,
                                              NodeId src, std::span<const NodeId> dsts,
                                              std::uint64_t slot_cap,
                                              std::span<const std::uint8_t> tx_allowed) {
  check_id(table, src);
  for (NodeId d : dsts) check_id(table, d);
  const std::size_t n = table.node_count();

  std::vector<Label> labels{{0, 0, src, kNone}};
  std::vector<std::uint32_t> current(n, kNone);  // best label per node
  current[static_cast<std::size_t>(src)] = 0;
  std::vector<NodeId> reached{src};

  std::vector<PathResult> out(dsts.size());
  std::vector<std::uint8_t> done(dsts.size(), 0);
  std::size_t remaining = dsts.size();
  auto settle = [&](std::uint64_t slot) {
    for (std::size_t i = 0; i < dsts.size(); ++i) {
      if (done[i]) continue;
      const std::uint32_t idx = current[static_cast<std::size_t>(dsts[i])];
      if (idx != kNone && labels[idx].slot <= slot) {
        out[i] = unwind(labels, idx);
        done[i] = 1;
        --remaining;
      }
    }
  };
  settle(0);

  // Pending improvements for this slot: (receiver, new label). The receiver
  // is silent in this slot, so updating after the sweep equals updating in place.
  std::vector<std::pair<NodeId, Label>> pending;
  for (std::uint64_t k = 1; k <= slot_cap && remaining > 0; ++k) {
    pending.clear();
    for (NodeId x : reached) {
      if (!tx_allowed.empty() && !tx_allowed[static_cast<std::size_t>(x)]) continue;
      if (!schedule.transmits(k, x)) continue;
      const std::uint32_t xl = current[static_cast<std::size_t>(x)];
      const std::uint32_t hops = labels[xl].hops + 1;
      for (const CandidateLink& link : table.links_from(x)) {
        const std::uint32_t yl = current[static_cast<std::size_t>(link.to)];
        if (yl != kNone && labels[yl].hops <= hops) continue;
        if (!table.active(x, link, k, schedule)) continue;
        pending.push_back({link.to, {k, hops, link.to, xl}});
      }
    }
    // Best candidate per receiver: fewest hops, then lowest predecessor node.
    std::sort(pending.begin(), pending.end(), [&](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first < b.first;
      if (a.second.hops != b.second.hops) return a.second.hops < b.second.hops;
      return labels[a.second.pred].node < labels[b.second.pred].node;
    });
    for (std::size_t i = 0; i < pending.size(); ++i) {
      if (i > 0 && pending[i].first == pending[i - 1].first) continue;
      const auto y = static_cast<std::size_t>(pending[i].first);
      if (current[y] == kNone) reached.push_back(pending[i].first);
      current[y] = static_cast<std::uint32_t>(labels.size());
      labels.push_back(pending[i].second);
    }
    if (!pending.empty()) settle(k);
  }
  for (std::size_t i = 0; i < dsts.size(); ++i)
    if (!done[i]) out[i] = censored_result(slot_cap);
  return out;
}

PathResult earliest_arrival(const LinkTable& table, const RoleSchedule& schedule, NodeId src,
                            NodeId dst, std::uint64_t slot_cap,
                            std::span<const std::uint8_t> tx_allowed) {
  const NodeId dsts[1] = {dst};
  return earliest_arrival_many(table, schedule, src, dsts, slot_cap, tx_allowed).front();
}

PathResult earliest_arrival(const NetworkRealization& realization, NodeId src, NodeId dst,
                            const SimConfig& config, const RandomStream& stream) {
  require_valid(config);
  const LinkTable table = LinkTable::build(realization);
  return earliest_arrival(table, RoleSchedule(stream, realization.params.p), src, dst, config.slot_cap);
}

NodeId nearest_component_node(const NetworkRealization& realization, Vec2 point,
                              std::span<const NodeId> component) {
  if (component.empty()) throw EmptyComponent("component has no nodes");
  NodeId best = component.front();
  double best_d2 = std::numeric_limits<double>::infinity();
  for (NodeId v : component) {
    if (!realization.legit.contains_id(v)) throw UnknownNode("no legitimate node with id " + std::to_string(v));
    const double d2 = distance_sq(point, realization.position(v));
    if (d2 < best_d2 || (d2 == best_d2 && v < best)) {
      best_d2 = d2;
      best = v;
    }
  }
  return best;
}

bool zeta_path_check(std::span<const NodeId> nodes, const PointSet& positions, double zeta) {
  for (std::size_t i = 2; i < nodes.size(); ++i)
    if (!(distance(positions[nodes[i - 2]].pos(), positions[nodes[i]].pos()) > zeta)) return false;
  return true;
}

bool zeta_path_check(std::span<const std::pair<NodeId, std::uint64_t>> itinerary,
                     const PointSet& positions, double zeta) {
  std::vector<NodeId> nodes;
  nodes.reserve(itinerary.size());
  for (const auto& [v, slot] : itinerary) nodes.push_back(v);
  return zeta_path_check(nodes, positions, zeta);
}

Window default_delay_window() { return {-5.0, -10.0, 15.0, 10.0, 0.0}; }

std::vector<DelayRow> delay_vs_distance_experiment(const ModelParams& params, const SimConfig& config,
                                                   std::span<const double> distances,
                                                   const Window& window) {
  require_valid(params);
  require_valid(config);
  require_valid(window);
  if (!std::is_sorted(distances.begin(), distances.end()))
    throw InvalidParam("distances", "must be sorted ascending");
  const std::size_t nd = distances.size();
  std::vector<DelayRow> rows(config.trials * nd);
  parallel_for(config.trials, config.workers, [&](std::size_t trial) {
    const RandomStream stream = RandomStream::for_trial(config.seed, trial);
    const NetworkRealization r = NetworkRealization::sample(params, window, stream);
    for (std::size_t j = 0; j < nd; ++j) {
      DelayRow& row = rows[trial * nd + j];
      row.distance = distances[j];
      row.p = params.p;
      row.eta = params.eta;
      row.trial = trial;
      row.result = censored_result(config.slot_cap);
    }
    if (r.node_count() == 0) return;
    const ComponentReport rep = components(potential_graph(r), r.legit, params.eta);
    const NodeId src = nearest_component_node(r, {0.0, 0.0}, rep.largest);
    std::vector<NodeId> dsts;
    for (double d : distances) dsts.push_back(nearest_component_node(r, {d, 0.0}, rep.largest));
    const LinkTable table = LinkTable::build(r);
    const auto results =
        earliest_arrival_many(table, RoleSchedule(stream, params.p), src, dsts, config.slot_cap);
    for (std::size_t j = 0; j < nd; ++j) rows[trial * nd + j].result = results[j];
  });
  return rows;
}

std::vector<DelaySummary> summarize(std::span<const DelayRow> rows) {
  std::map<double, DelaySummary> by_distance;
  for (const DelayRow& row : rows) {
    DelaySummary& s = by_distance[row.distance];
    s.distance = row.distance;
    ++s.trials;
    if (row.result.censored)
      ++s.censored;
    else
      s.delay.add(static_cast<double>(row.result.delay));
  }
  std::vector<DelaySummary> out;
  for (auto& [d, s] : by_distance) out.push_back(s);
  return out;
}

FitResult delay_fit(std::span<const DelaySummary> summaries) {
  std::vector<std::pair<double, double>> pts;
  for (const DelaySummary& s : summaries)
    if (s.delay.count() > 0) pts.emplace_back(s.distance, s.delay.mean());
  return linear_fit(pts);
}

void write_delay_csv(std::span<const DelayRow> rows, const std::filesystem::path& path) {
  CsvWriter csv({"distance", "p", "eta", "trial", "delay", "hops", "censored"});
  for (const DelayRow& row : rows) {
    csv.cell(row.distance).cell(row.p).cell(row.eta).cell(row.trial).cell(row.result.delay)
        .cell(row.result.hops).cell(row.result.censored);
    csv.end_row();
  }
  csv.save(path);
}

}  // namespace scg
