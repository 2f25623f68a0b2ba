#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "scg/model.hpp"
#include "scg/point_process.hpp"
#include "scg/random.hpp"

namespace scg {

/// One placement of legitimate nodes and eavesdroppers, with indexes.
struct NetworkRealization {
  ModelParams params;
  PointSet legit;
  SpatialIndex legit_index;
  PointSet eds;
  SpatialIndex ed_index;

  /// Samples both processes on `window`. Legitimate nodes and eavesdroppers
  /// come from separate substreams of `stream`, so changing λ_e never moves
  /// a legitimate node. `fixed_legit` nodes take ids 0..k-1.
  static NetworkRealization sample(const ModelParams& params, const Window& window,
                                   const RandomStream& stream,
                                   std::span<const Vec2> fixed_legit = {});

  static NetworkRealization from_points(const ModelParams& params, PointSet legit, PointSet eds);

  /// Copy with one more eavesdropper (id = previous count).
  NetworkRealization with_extra_ed(Vec2 position) const;
  /// Copy without eavesdropper `id`; later ids shift down by one.
  NetworkRealization without_ed(NodeId id) const;

  Vec2 position(NodeId id) const { return legit[id].pos(); }
  std::size_t node_count() const noexcept { return legit.size(); }
};

/// Lazily evaluated ALOHA schedule: node `id` transmits in slot `k` iff a
/// keyed uniform draw for (k, id) falls below p. Forced roles override the
/// draw in every slot (Palm conditioning of the origin).
class RoleSchedule {
 public:
  RoleSchedule(const RandomStream& stream, double p) noexcept
      : stream_(stream.substream(StreamTag::roles)), p_(p) {}

  bool transmits(std::uint64_t slot, NodeId id) const noexcept {
    for (const auto& [fid, tx] : forced_)
      if (fid == id) return tx;
    return stream_.uniform_at(slot, static_cast<std::uint64_t>(id)) < p_;
  }

  void force(NodeId id, bool transmit);
  double p() const noexcept { return p_; }

 private:
  RandomStream stream_;
  double p_;
  std::vector<std::pair<NodeId, bool>> forced_;
};

/// Half-duplex split of the legitimate nodes in one slot.
struct SlotRoles {
  std::uint64_t slot = 0;
  std::vector<std::uint8_t> is_tx;
  std::vector<NodeId> tx;
  std::vector<NodeId> rx;

  bool transmits(NodeId id) const { return is_tx[static_cast<std::size_t>(id)] != 0; }
  /// Moves `id` into the transmitter set (keeps both lists sorted).
  void set_transmit(NodeId id);
};

SlotRoles draw_slot_roles(const NetworkRealization& realization, std::uint64_t slot,
                          const RoleSchedule& schedule);
SlotRoles draw_slot_roles(const NetworkRealization& realization, std::uint64_t slot,
                          const RandomStream& stream);

/// (C1)–(C3) for transmitter `x` and receiver `y`. Throws RoleViolation when
/// x is not transmitting or y is not receiving in `roles`.
bool secure_link(const NetworkRealization& realization, const SlotRoles& roles, NodeId x, NodeId y);

struct EdgeList {
  std::uint64_t slot = 0;
  std::vector<std::pair<NodeId, NodeId>> edges;  ///< (tx, rx), sorted
};

EdgeList slot_edge_set(const NetworkRealization& realization, const SlotRoles& roles);

void write_edges_csv(std::span<const EdgeList> lists, const std::filesystem::path& path);

/// Secure out-degree of node 0, which must be transmitting.
std::size_t out_degree_at_origin(const NetworkRealization& realization, const SlotRoles& roles);
/// Secure in-degree of node 0, which must be receiving.
std::size_t in_degree_at_origin(const NetworkRealization& realization, const SlotRoles& roles);

/// One Palm trial: plants a node at (0,0), forces its role, draws the rest.
std::size_t sample_out_degree(const ModelParams& params, const Window& window,
                              const RandomStream& stream);
std::size_t sample_in_degree(const ModelParams& params, const Window& window,
                             const RandomStream& stream);

/// A directed (C1) link whose static (C3) requirement holds, with the nodes
/// whose transmission would break (C2) at the receiver.
struct CandidateLink {
  NodeId to = 0;
  std::uint32_t interferers_begin = 0;
  std::uint32_t interferers_end = 0;
};

/// Every candidate link of a realization, precomputed once so that the
/// per-slot test reduces to role lookups. The routers run on this.
class LinkTable {
 public:
  /// `enforce_c3(x)` decides whether the eavesdropper condition applies to
  /// links transmitted by x; the default enforces it everywhere.
  static LinkTable build(const NetworkRealization& realization,
                         const std::function<bool(NodeId)>& enforce_c3 = {});

  std::span<const CandidateLink> links_from(NodeId x) const {
    const auto i = static_cast<std::size_t>(x);
    return {links_.data() + offsets_[i], links_.data() + offsets_[i + 1]};
  }

  std::span<const NodeId> interferers(const CandidateLink& link) const {
    return {interferers_.data() + link.interferers_begin, interferers_.data() + link.interferers_end};
  }

  /// Link x→to is in E_k under `schedule`.
  bool active(NodeId x, const CandidateLink& link, std::uint64_t slot,
              const RoleSchedule& schedule) const {
    if (!schedule.transmits(slot, x) || schedule.transmits(slot, link.to)) return false;
    for (NodeId z : interferers(link))
      if (schedule.transmits(slot, z)) return false;
    return true;
  }

  std::size_t node_count() const noexcept { return offsets_.size() - 1; }
  std::size_t link_count() const noexcept { return links_.size(); }

 private:
  std::vector<std::uint32_t> offsets_{0};
  std::vector<CandidateLink> links_;
  std::vector<NodeId> interferers_;
};

}  // namespace scg
