#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "routing_oracle.hpp"
#include "scg/errors.hpp"
#include "scg/percolation.hpp"
#include "scg/temporal_routing.hpp"

using namespace scg;

namespace {

NetworkRealization fixture(const ModelParams& prm, std::vector<Vec2> legit, std::vector<Vec2> eds) {
  const Window w = Window::centered(5.0);
  return NetworkRealization::from_points(prm, PointSet::from_positions(legit, w),
                                         PointSet::from_positions(eds, w));
}

// Every hop must be an edge of its slot and slots must increase.
void check_itinerary(const NetworkRealization& r, const RoleSchedule& schedule, const PathResult& res) {
  REQUIRE_FALSE(res.censored);
  REQUIRE(res.itinerary.size() == res.hops + 1);
  CHECK(res.itinerary.back().second == res.delay);
  CHECK(res.delay >= res.hops);
  for (std::size_t i = 1; i < res.itinerary.size(); ++i) {
    const auto [x, kx] = res.itinerary[i - 1];
    const auto [y, ky] = res.itinerary[i];
    REQUIRE(ky > kx);
    const SlotRoles roles = draw_slot_roles(r, ky, schedule);
    CHECK(secure_link(r, roles, x, y));
  }
}

}  // namespace

TEST_CASE("adjacent pair with forced roles connects in slot 1") {
  const ModelParams prm{1.0, 0.0, 0.5, 1.0, 0.5, 0.5};
  const auto r = fixture(prm, {{0, 0}, {0.6, 0}}, {});
  RoleSchedule schedule(RandomStream(1), prm.p);
  schedule.force(0, true);
  schedule.force(1, false);
  const PathResult res = earliest_arrival(LinkTable::build(r), schedule, 0, 1, 10);
  CHECK(res.delay == 1);
  CHECK(res.hops == 1);
  check_itinerary(r, schedule, res);
}

TEST_CASE("destination fenced by eavesdroppers is never reached") {
  const ModelParams prm{1.0, 1.0, 0.5, 1.0, 0.0, 2.0};
  const auto r = fixture(prm, {{0, 0}, {0.5, 0}, {1.0, 0}}, {{1.0, 0.01}});
  SimConfig cfg;
  cfg.slot_cap = 200;
  const PathResult res = earliest_arrival(r, 0, 2, cfg, RandomStream(3));
  CHECK(res.censored);
  CHECK(res.delay == 200);
  CHECK_THROWS_AS(earliest_arrival(r, 0, 9, cfg, RandomStream(3)), UnknownNode);
}

TEST_CASE("earliest arrival equals exhaustive enumeration on micro instances") {
  int reached = 0;
  for (int trial = 0; trial < 300; ++trial) {
    RandomStream s = RandomStream::for_trial(40, static_cast<std::uint64_t>(trial));
    const NetworkRealization r = oracle::micro_instance(s);
    const std::uint64_t cap = 1 + static_cast<std::uint64_t>(s.uniform() * 6);
    const RoleSchedule schedule(s, r.params.p);
    const NodeId dst = static_cast<NodeId>(r.node_count() - 1);
    const PathResult res = earliest_arrival(LinkTable::build(r), schedule, 0, dst, cap);
    const auto truth = oracle::brute_force_route(r, schedule, 0, dst, cap);
    REQUIRE(res.censored == !truth.has_value());
    if (truth) {
      ++reached;
      CHECK(res.delay == truth->first);
      CHECK(res.hops == truth->second);
      check_itinerary(r, schedule, res);
    }
  }
  CHECK(reached > 30);
}

TEST_CASE("single-source search agrees with per-target searches") {
  for (int trial = 0; trial < 20; ++trial) {
    RandomStream s = RandomStream::for_trial(41, static_cast<std::uint64_t>(trial));
    const auto r = NetworkRealization::sample({2.0, 0.1, 0.4, 1.0, 0.8, 0.8}, Window::centered(3.0), s);
    if (r.node_count() < 5) continue;
    const LinkTable table = LinkTable::build(r);
    const RoleSchedule schedule(s, r.params.p);
    const std::vector<NodeId> dsts{1, 2, 3, 4, 0};
    const auto many = earliest_arrival_many(table, schedule, 0, dsts, 300);
    for (std::size_t i = 0; i < dsts.size(); ++i) {
      const PathResult one = earliest_arrival(table, schedule, 0, dsts[i], 300);
      CHECK(one.delay == many[i].delay);
      CHECK(one.hops == many[i].hops);
      CHECK(one.itinerary == many[i].itinerary);
      if (!one.censored) check_itinerary(r, schedule, one);
    }
    CHECK(many[4].delay == 0);
    CHECK(many[4].hops == 0);
  }
}

TEST_CASE("adding an eavesdropper never shortens the delay") {
  for (int trial = 0; trial < 60; ++trial) {
    RandomStream s = RandomStream::for_trial(42, static_cast<std::uint64_t>(trial));
    const auto r = NetworkRealization::sample({2.0, 0.1, 0.4, 1.0, 0.8, 0.8}, Window::centered(3.0), s);
    if (r.node_count() < 2) continue;
    const auto r2 = r.with_extra_ed({s.uniform(-3, 3), s.uniform(-3, 3)});
    SimConfig cfg;
    cfg.slot_cap = 500;
    const NodeId dst = static_cast<NodeId>(r.node_count() - 1);
    const PathResult a = earliest_arrival(r, 0, dst, cfg, s);
    const PathResult b = earliest_arrival(r2, 0, dst, cfg, s);
    CHECK(b.delay >= a.delay);
    if (a.censored) CHECK(b.censored);
  }
}

TEST_CASE("nearest component node") {
  const ModelParams prm;
  const auto r = fixture(prm, {{0, 0}, {1, 0}, {-1, 0}, {3, 3}}, {});
  const std::vector<NodeId> single{3};
  CHECK(nearest_component_node(r, {0, 0}, single) == 3);
  const std::vector<NodeId> all{0, 1, 2, 3};
  CHECK(nearest_component_node(r, {1, 0}, all) == 1);
  CHECK(nearest_component_node(r, {0, 5}, std::vector<NodeId>{2, 1}) == 1);  // tie → lowest id
  CHECK_THROWS_AS(nearest_component_node(r, {0, 0}, std::vector<NodeId>{}), EmptyComponent);

  RandomStream s(43);
  const auto big = NetworkRealization::sample({1.0, 0.0, 0.5, 1.0, 0.0, 0.0}, Window::centered(5.0), s);
  std::vector<NodeId> comp;
  for (std::size_t i = 0; i < std::min<std::size_t>(100, big.node_count()); ++i) comp.push_back(static_cast<NodeId>(i));
  for (int q = 0; q < 50; ++q) {
    const Vec2 pt{s.uniform(-5, 5), s.uniform(-5, 5)};
    NodeId best = comp.front();
    for (NodeId v : comp)
      if (distance_sq(pt, big.position(v)) < distance_sq(pt, big.position(best))) best = v;
    CHECK(nearest_component_node(big, pt, comp) == best);
  }
}

TEST_CASE("zeta path check") {
  const Window w = Window::centered(5.0);
  const double eta = 1.0, zeta = eta / std::numbers::sqrt3;
  const PointSet line = PointSet::from_positions(std::vector<Vec2>{{0, 0}, {0.5, 0}, {1.0, 0}}, w);
  CHECK(zeta_path_check(std::vector<NodeId>{0, 1}, line, zeta));
  CHECK(zeta_path_check(std::vector<NodeId>{0, 1, 2}, line, zeta));
  const PointSet fold = PointSet::from_positions(std::vector<Vec2>{{0, 0}, {0.8, 0}, {zeta / 2, 0}}, w);
  CHECK_FALSE(zeta_path_check(std::vector<NodeId>{0, 1, 2}, fold, zeta));
  const std::vector<std::pair<NodeId, std::uint64_t>> it{{0, 0}, {1, 2}, {2, 5}};
  CHECK(zeta_path_check(it, line, zeta));
}

TEST_CASE("delay experiment: coincident anchors and rough linearity") {
  const ModelParams prm{3.0, 0.0, 0.3, 1.0, 0.5, 0.0};
  SimConfig cfg;
  cfg.trials = 40;
  cfg.slot_cap = 5000;
  const std::vector<double> dist{0.0, 2.0, 4.0, 8.0};
  const Window w{-3.0, -4.0, 11.0, 4.0, 0.0};
  const auto rows = delay_vs_distance_experiment(prm, cfg, dist, w);
  REQUIRE(rows.size() == 160);
  for (const DelayRow& row : rows)
    if (row.distance == 0.0) CHECK(row.result.delay == 0);
  const auto sums = summarize(rows);
  REQUIRE(sums.size() == 4);
  for (const auto& s : sums) CHECK(s.censored == 0);
  const double ratio = sums[3].delay.mean() / sums[2].delay.mean();
  CHECK(ratio > 1.5);
  CHECK(ratio < 2.5);
  // Expected sub-additivity: T(0,8) against T(0,4) + T(0,4).
  CHECK(sums[3].delay.mean() <= 2 * sums[2].delay.mean() + 2 * (sums[3].delay.stderr_of_mean() + 2 * sums[2].delay.stderr_of_mean()));
  CHECK(delay_fit(sums).r_squared > 0.9);

  const auto again = delay_vs_distance_experiment(prm, cfg, dist, w);
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(again[i].result.itinerary == rows[i].result.itinerary);
}
