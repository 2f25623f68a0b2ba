#include "scg/nnc_dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "scg/errors.hpp"
#include "scg/io.hpp"
#include "scg/parallel.hpp"

namespace scg {

namespace {

// Distance from the origin to the nearest point of a fresh PPP(λ_e), drawn
// from P(R > t) = exp(-λ_e π t²); infinite when λ_e = 0.
class FreshEdDistance {
 public:
  FreshEdDistance(const RandomStream& stream, double lambda_e)
      : stream_(stream.substream(StreamTag::eds_per_slot)), lambda_e_(lambda_e) {}

  double at(std::uint64_t slot) const {
    if (lambda_e_ <= 0.0) return std::numeric_limits<double>::infinity();
    const double u = 1.0 - stream_.uniform_at(slot, 0);  // (0, 1]
    return std::sqrt(-std::log(u) / (lambda_e_ * std::numbers::pi));
  }

 private:
  RandomStream stream_;
  double lambda_e_;
};

struct Target {
  NodeId id = 0;
  double dist = 0.0;
  std::vector<NodeId> interferers;  // other nodes in B(target, β_l d), origin excluded
};

Target make_target(const NetworkRealization& r, NodeId y) {
  Target t;
  t.id = y;
  t.dist = distance(r.position(0), r.position(y));
  for (NodeId z : r.legit_index.neighbors_within(r.position(y), r.params.beta_l * t.dist))
    if (z != 0 && z != y) t.interferers.push_back(z);
  return t;
}

bool quiet(const RoleSchedule& schedule, std::uint64_t slot, const Target& t) {
  if (schedule.transmits(slot, t.id)) return false;
  for (NodeId z : t.interferers)
    if (schedule.transmits(slot, z)) return false;
  return true;
}

CensoredSlots censored(const SimConfig& config) { return {config.slot_cap, true}; }

void require_origin(const NetworkRealization& r) {
  if (r.node_count() == 0) throw UnknownNode("realization has no origin node");
}

}  // namespace

NodeId nearest_neighbor_of_origin(const NetworkRealization& r) {
  require_origin(r);
  const Vec2 o = r.position(0);
  NodeId best = -1;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (const Point& pt : r.legit.points) {
    if (pt.id == 0) continue;
    const double d2 = distance_sq(o, pt.pos());
    if (d2 < best_d2) {
      best_d2 = d2;
      best = pt.id;
    }
  }
  if (best < 0) throw NoNeighbor("origin has no other legitimate node");
  return best;
}

CensoredSlots simulate_nnc_time(const NetworkRealization& r, const SimConfig& config,
                                const RandomStream& stream) {
  require_valid(config);
  const Target target = make_target(r, nearest_neighbor_of_origin(r));
  const double ed_radius = r.params.beta_e * target.dist;

  if (config.ed_mode == EdMode::static_eds && !r.ed_index.is_disk_empty(r.position(0), ed_radius))
    return censored(config);

  RoleSchedule schedule(stream, r.params.p);
  if (config.pair_roles == PairRoles::palm) {
    schedule.force(0, true);
    schedule.force(target.id, false);
  }
  const FreshEdDistance fresh(stream, r.params.lambda_e);
  const bool per_slot = config.ed_mode == EdMode::per_slot_iid;

  for (std::uint64_t k = 1; k <= config.slot_cap; ++k) {
    if (!schedule.transmits(k, 0) || !quiet(schedule, k, target)) continue;
    if (per_slot && fresh.at(k) < ed_radius) continue;
    return {k, false};
  }
  return censored(config);
}

CensoredSlots simulate_one_hop_time(const NetworkRealization& r, const SimConfig& config,
                                    const RandomStream& stream) {
  require_valid(config);
  require_origin(r);
  const bool per_slot = config.ed_mode == EdMode::per_slot_iid;
  std::vector<Target> targets;
  for (NodeId y : r.legit_index.neighbors_within(r.position(0), r.params.eta)) {
    if (y == 0) continue;
    Target t = make_target(r, y);
    if (!per_slot && !r.ed_index.is_disk_empty(r.position(0), r.params.beta_e * t.dist)) continue;
    targets.push_back(std::move(t));
  }
  if (targets.empty()) return censored(config);
  // Closest targets first: with a fresh eavesdropper distance they are the
  // most likely to pass (C3).
  std::sort(targets.begin(), targets.end(),
            [](const Target& a, const Target& b) { return a.dist < b.dist || (a.dist == b.dist && a.id < b.id); });

  RoleSchedule schedule(stream, r.params.p);
  if (config.pair_roles == PairRoles::palm) schedule.force(0, true);
  const FreshEdDistance fresh(stream, r.params.lambda_e);

  for (std::uint64_t k = 1; k <= config.slot_cap; ++k) {
    if (!schedule.transmits(k, 0)) continue;
    const double ed = per_slot ? fresh.at(k) : std::numeric_limits<double>::infinity();
    for (const Target& t : targets) {
      if (ed < r.params.beta_e * t.dist) break;
      if (quiet(schedule, k, t)) return {k, false};
    }
  }
  return censored(config);
}

Window nnc_window(const ModelParams& params) {
  // P(nearest neighbour beyond 4/sqrt(λ_l)) = exp(-16π) is negligible.
  const double reach = 4.0 / std::sqrt(std::max(params.lambda_l, 1e-12));
  return Window::centered(reach * std::max(1.0 + params.beta_l, std::max(params.beta_e, 1.0)));
}

Window one_hop_window(const ModelParams& params) {
  return Window::centered(params.eta * std::max(1.0 + params.beta_l, std::max(params.beta_e, 1.0)));
}

std::vector<CensoredSlots> run_single_hop_trials(const ModelParams& params, const SimConfig& config,
                                                 SingleHopKind kind) {
  require_valid(params);
  require_valid(config);
  ModelParams layer = params;
  if (config.ed_mode == EdMode::per_slot_iid) layer.lambda_e = 0.0;
  const Window window = kind == SingleHopKind::nnc ? nnc_window(params) : one_hop_window(params);
  const std::array<Vec2, 1> origin{Vec2{0.0, 0.0}};

  std::vector<CensoredSlots> out(config.trials);
  parallel_for(config.trials, config.workers, [&](std::size_t i) {
    const RandomStream stream = RandomStream::for_trial(config.seed, i);
    NetworkRealization r = NetworkRealization::sample(layer, window, stream, origin);
    r.params = params;
    if (kind == SingleHopKind::nnc) {
      // A lone origin has no nearest neighbour; report it as never connecting.
      out[i] = r.node_count() > 1 ? simulate_nnc_time(r, config, stream)
                                  : CensoredSlots{config.slot_cap, true};
    } else {
      out[i] = simulate_one_hop_time(r, config, stream);
    }
  });
  return out;
}

void write_nnc_csv(std::span<const CensoredSlots> results, EdMode mode,
                   const std::filesystem::path& path) {
  CsvWriter csv({"trial", "mode", "value", "censored"});
  for (std::size_t i = 0; i < results.size(); ++i) {
    csv.cell(i).cell(to_string(mode)).cell(results[i].value).cell(results[i].censored);
    csv.end_row();
  }
  csv.save(path);
}

double censored_mean(std::span<const CensoredSlots> results) {
  double sum = 0.0;
  for (const CensoredSlots& c : results) sum += static_cast<double>(c.value);
  return results.empty() ? 0.0 : sum / static_cast<double>(results.size());
}

}  // namespace scg
