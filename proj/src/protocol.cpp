#include "scg/protocol.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "scg/errors.hpp"
#include "scg/io.hpp"

namespace scg {

NetworkRealization NetworkRealization::sample(const ModelParams& params, const Window& window,
                                              const RandomStream& stream,
                                              std::span<const Vec2> fixed_legit) {
  require_valid(params);
  RandomStream legit_stream = stream.substream(StreamTag::legit);
  RandomStream ed_stream = stream.substream(StreamTag::eavesdroppers);
  PointSet legit = sample_ppp(params.lambda_l, window, legit_stream, fixed_legit);
  PointSet eds = sample_ppp(params.lambda_e, window, ed_stream);
  return from_points(params, std::move(legit), std::move(eds));
}

NetworkRealization NetworkRealization::from_points(const ModelParams& params, PointSet legit,
                                                   PointSet eds) {
  NetworkRealization r;
  r.params = params;
  const double pitch = default_cell_size(params);
  r.legit_index = SpatialIndex(legit, pitch);
  r.ed_index = SpatialIndex(eds, pitch);
  r.legit = std::move(legit);
  r.eds = std::move(eds);
  return r;
}

NetworkRealization NetworkRealization::with_extra_ed(Vec2 position) const {
  PointSet eds_copy = eds;
  eds_copy.points.push_back({position.x, position.y, static_cast<NodeId>(eds_copy.size())});
  return from_points(params, legit, std::move(eds_copy));
}

NetworkRealization NetworkRealization::without_ed(NodeId id) const {
  if (!eds.contains_id(id)) throw UnknownNode("no eavesdropper with id " + std::to_string(id));
  PointSet eds_copy;
  eds_copy.window = eds.window;
  for (const Point& pt : eds.points)
    if (pt.id != id) eds_copy.points.push_back({pt.x, pt.y, static_cast<NodeId>(eds_copy.size())});
  return from_points(params, legit, std::move(eds_copy));
}

void RoleSchedule::force(NodeId id, bool transmit) {
  for (auto& entry : forced_) {
    if (entry.first == id) {
      entry.second = transmit;
      return;
    }
  }
  forced_.emplace_back(id, transmit);
}

void SlotRoles::set_transmit(NodeId id) {
  const auto i = static_cast<std::size_t>(id);
  if (is_tx[i]) return;
  is_tx[i] = 1;
  rx.erase(std::lower_bound(rx.begin(), rx.end(), id));
  tx.insert(std::lower_bound(tx.begin(), tx.end(), id), id);
}

SlotRoles draw_slot_roles(const NetworkRealization& realization, std::uint64_t slot,
                          const RoleSchedule& schedule) {
  SlotRoles roles;
  roles.slot = slot;
  const std::size_t n = realization.node_count();
  roles.is_tx.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto id = static_cast<NodeId>(i);
    if (schedule.transmits(slot, id)) {
      roles.is_tx[i] = 1;
      roles.tx.push_back(id);
    } else {
      roles.rx.push_back(id);
    }
  }
  return roles;
}

SlotRoles draw_slot_roles(const NetworkRealization& realization, std::uint64_t slot,
                          const RandomStream& stream) {
  return draw_slot_roles(realization, slot, RoleSchedule(stream, realization.params.p));
}

namespace {

void check_node(const NetworkRealization& r, NodeId id) {
  if (!r.legit.contains_id(id)) throw UnknownNode("no legitimate node with id " + std::to_string(id));
}

// (C1)-(C3) without role checks; `roles` must already have x in tx, y in rx.
bool link_holds(const NetworkRealization& r, const SlotRoles& roles, NodeId x, NodeId y) {
  const Vec2 px = r.position(x);
  const Vec2 py = r.position(y);
  const double d = distance(px, py);
  if (!(d < r.params.eta)) return false;
  if (!r.ed_index.is_disk_empty(px, r.params.beta_e * d)) return false;
  // (C2): no other transmitter strictly inside B(y, β_l d).
  return r.legit_index.visit_within(py, r.params.beta_l * d, [&](NodeId z, double) {
    return z == x || !roles.transmits(z);
  });
}

}  // namespace

bool secure_link(const NetworkRealization& realization, const SlotRoles& roles, NodeId x, NodeId y) {
  check_node(realization, x);
  check_node(realization, y);
  if (!roles.transmits(x))
    throw RoleViolation("node " + std::to_string(x) + " is not transmitting in slot " +
                        std::to_string(roles.slot));
  if (roles.transmits(y))
    throw RoleViolation("node " + std::to_string(y) + " is not receiving in slot " +
                        std::to_string(roles.slot));
  return link_holds(realization, roles, x, y);
}

EdgeList slot_edge_set(const NetworkRealization& realization, const SlotRoles& roles) {
  EdgeList out;
  out.slot = roles.slot;
  for (NodeId x : roles.tx) {
    std::vector<NodeId> near = realization.legit_index.neighbors_within(realization.position(x),
                                                                        realization.params.eta);
    for (NodeId y : near)
      if (y != x && !roles.transmits(y) && link_holds(realization, roles, x, y))
        out.edges.emplace_back(x, y);
  }
  return out;
}

void write_edges_csv(std::span<const EdgeList> lists, const std::filesystem::path& path) {
  CsvWriter csv({"slot", "tx_id", "rx_id"});
  for (const EdgeList& list : lists) {
    for (const auto& [x, y] : list.edges) {
      csv.cell(list.slot).cell(x).cell(y);
      csv.end_row();
    }
  }
  csv.save(path);
}

std::size_t out_degree_at_origin(const NetworkRealization& realization, const SlotRoles& roles) {
  check_node(realization, 0);
  if (!roles.transmits(0)) throw RoleViolation("origin must transmit for the out-degree");
  std::size_t count = 0;
  realization.legit_index.visit_within(realization.position(0), realization.params.eta,
                                       [&](NodeId y, double) {
                                         if (y != 0 && !roles.transmits(y) &&
                                             link_holds(realization, roles, 0, y))
                                           ++count;
                                         return true;
                                       });
  return count;
}

std::size_t in_degree_at_origin(const NetworkRealization& realization, const SlotRoles& roles) {
  check_node(realization, 0);
  if (roles.transmits(0)) throw RoleViolation("origin must receive for the in-degree");
  std::size_t count = 0;
  realization.legit_index.visit_within(realization.position(0), realization.params.eta,
                                       [&](NodeId x, double) {
                                         if (x != 0 && roles.transmits(x) &&
                                             link_holds(realization, roles, x, 0))
                                           ++count;
                                         return true;
                                       });
  return count;
}

namespace {

SlotRoles palm_roles(const NetworkRealization& r, const RandomStream& stream, bool origin_tx) {
  RoleSchedule schedule(stream, r.params.p);
  schedule.force(0, origin_tx);
  return draw_slot_roles(r, 0, schedule);
}

}  // namespace

std::size_t sample_out_degree(const ModelParams& params, const Window& window,
                              const RandomStream& stream) {
  const std::array<Vec2, 1> origin{Vec2{0.0, 0.0}};
  const NetworkRealization r = NetworkRealization::sample(params, window, stream, origin);
  return out_degree_at_origin(r, palm_roles(r, stream, true));
}

std::size_t sample_in_degree(const ModelParams& params, const Window& window,
                             const RandomStream& stream) {
  const std::array<Vec2, 1> origin{Vec2{0.0, 0.0}};
  const NetworkRealization r = NetworkRealization::sample(params, window, stream, origin);
  return in_degree_at_origin(r, palm_roles(r, stream, false));
}

LinkTable LinkTable::build(const NetworkRealization& realization,
                           const std::function<bool(NodeId)>& enforce_c3) {
  LinkTable table;
  const std::size_t n = realization.node_count();
  const ModelParams& prm = realization.params;
  table.offsets_.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = static_cast<NodeId>(i);
    const Vec2 px = realization.position(x);
    const bool c3 = !enforce_c3 || enforce_c3(x);
    for (NodeId y : realization.legit_index.neighbors_within(px, prm.eta)) {
      if (y == x) continue;
      const Vec2 py = realization.position(y);
      const double d = distance(px, py);
      if (c3 && !realization.ed_index.is_disk_empty(px, prm.beta_e * d)) continue;
      CandidateLink link;
      link.to = y;
      link.interferers_begin = static_cast<std::uint32_t>(table.interferers_.size());
      for (NodeId z : realization.legit_index.neighbors_within(py, prm.beta_l * d))
        if (z != x && z != y) table.interferers_.push_back(z);
      link.interferers_end = static_cast<std::uint32_t>(table.interferers_.size());
      table.links_.push_back(link);
    }
    table.offsets_.push_back(static_cast<std::uint32_t>(table.links_.size()));
  }
  return table;
}

}  // namespace scg
