#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "scg/errors.hpp"
#include "scg/split_routing.hpp"

using namespace scg;

namespace {

NetworkRealization fixture(const ModelParams& prm, std::vector<Vec2> legit, std::vector<Vec2> eds) {
  const Window w = Window::centered(20.0);
  return NetworkRealization::from_points(prm, PointSet::from_positions(legit, w),
                                         PointSet::from_positions(eds, w));
}

PathResult path(std::vector<NodeId> nodes) {
  PathResult r;
  for (std::size_t i = 0; i < nodes.size(); ++i) r.itinerary.emplace_back(nodes[i], i);
  r.hops = nodes.size() - 1;
  r.delay = r.hops;
  return r;
}

// Every tile of the two-path construction, plus the endpoints, on a frame along +x.
std::vector<Vec2> full_tiling(double eta, long long ns) {
  const double s = eta / std::numbers::sqrt3;
  std::vector<Vec2> pts{{0.0, 0.0}, {static_cast<double>(ns) * s - s / 2, 0.0}};
  for (long long i = 0; i < ns; ++i) {
    pts.push_back({(i + 0.5) * s, 0.0});
    pts.push_back({(i + 0.5) * s, 5.0 * s});
  }
  for (int row = 1; row <= 4; ++row) {
    pts.push_back({0.5 * s, row * s});
    pts.push_back({(static_cast<double>(ns) - 0.5) * s, row * s});
  }
  return pts;
}

}  // namespace

TEST_CASE("exposure collects eavesdroppers inside every hop disk") {
  const ModelParams prm{1.0, 1.0, 0.5, 1.0, 0.0, 0.5};
  // hop 0->1 has length 0.8 (disk radius 0.4), hop 1->2 length 0.6 (radius 0.3)
  const auto r = fixture(prm, {{0, 0}, {0.8, 0}, {1.4, 0}}, {{0.0, 0.39}, {0.8, -0.31}, {0.8, 0.29}, {-0.4, 0}});
  const PathResult p = path({0, 1, 2});
  CHECK(eavesdrop_exposure(p.itinerary, r) == std::vector<NodeId>{0, 2});
  CHECK(eavesdrop_exposure(path({0}).itinerary, r).empty());

  const auto q = fixture(prm, {{0, 0}, {0.8, 0}, {0, 3}, {0.8, 3}}, {{0.0, 0.39}});
  CHECK(is_two_secure(path({0, 1}), path({2, 3}), q));
  CHECK_FALSE(is_two_secure(path({0, 1}), path({0, 1}), q));
}

TEST_CASE("eavesdropper wall blocks the direct route but not a split pair") {
  const ModelParams prm{1.0, 1.0, 0.5, 1.0, 0.3, 0.6};
  const NetworkRealization r = ed_wall_fixture(prm);
  SimConfig cfg;
  cfg.slot_cap = 5000;
  bool improved = false;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const SplitRoute route = two_secure_route(r, 0, 1, cfg, RandomStream(seed));
    CHECK(route.direct.censored);
    REQUIRE_FALSE(route.censored);
    CHECK(route.kind == RouteKind::split);
    REQUIRE(route.path_b.has_value());
    CHECK(route.delay == std::max(route.path_a.delay, route.path_b->delay));
    CHECK(is_two_secure(route.path_a, *route.path_b, r));
    CHECK_FALSE(eavesdrop_exposure(route.path_a.itinerary, r).empty());
    improved = improved || route.delay < route.direct.delay;
  }
  CHECK(improved);
}

TEST_CASE("without eavesdroppers the direct route always wins") {
  const ModelParams prm{1.0, 0.0, 0.4, 1.0, 0.5, 0.5};
  SimConfig cfg;
  cfg.slot_cap = 2000;
  cfg.trials = 20;
  cfg.seed = 5;
  for (const SplitRow& row : split_compare_experiment(prm, cfg, 4.0)) {
    CHECK(row.route.kind == RouteKind::direct);
    CHECK(row.route.delay == row.route.direct.delay);
  }
}

TEST_CASE("split comparison never does worse than direct") {
  const ModelParams prm{1.5, 0.15, 0.3, 1.0, 0.5, 0.5};
  SimConfig cfg;
  cfg.slot_cap = 3000;
  cfg.trials = 40;
  cfg.seed = 11;
  int splits = 0;
  for (const SplitRow& row : split_compare_experiment(prm, cfg, 5.0)) {
    const SplitRoute& s = row.route;
    if (!s.direct.censored) {
      REQUIRE_FALSE(s.censored);
      CHECK(s.delay <= s.direct.delay);
    }
    if (s.kind == RouteKind::split) {
      ++splits;
      REQUIRE(s.path_b.has_value());
      const NetworkRealization r = NetworkRealization::sample(
          prm, default_delay_window(), RandomStream::for_trial(cfg.seed, row.trial));
      CHECK(is_two_secure(s.path_a, *s.path_b, r));
    }
  }
  MESSAGE("split routes chosen: " << splits);
}

TEST_CASE("two-path tile certificate") {
  const ModelParams prm{1.0, 1.0, 0.5, 1.0, 0.5, 0.4};
  const double s = 1.0 / std::numbers::sqrt3;
  const long long ns = 6;
  const std::vector<Vec2> pts = full_tiling(prm.eta, ns);
  const Vec2 src = pts[0], dst = pts[1];

  CHECK(split_tile_certificate(fixture(prm, pts, {}), src, dst));
  // far eavesdroppers and ones between the rows do not matter
  CHECK(split_tile_certificate(fixture(prm, pts, {{3 * s, 2.5 * s}, {-5, -5}}), src, dst));

  // emptying one column tile breaks it
  std::vector<Vec2> holed = pts;
  holed.erase(std::find_if(holed.begin(), holed.end(),
                           [&](Vec2 v) { return std::abs(v.x - 0.5 * s) < 1e-9 && std::abs(v.y - 3 * s) < 1e-9; }));
  CHECK_FALSE(split_tile_certificate(fixture(prm, holed, {}), src, dst));

  const double m = prm.beta_e * prm.eta;
  // eavesdroppers inside the source region, the mirrored destination region, or its column margin
  CHECK_FALSE(split_tile_certificate(fixture(prm, pts, {{2 * s, s / 2 + m - 0.01}}), src, dst));
  CHECK_FALSE(split_tile_certificate(fixture(prm, pts, {{ns * s + m - 0.01, 0.0}}), src, dst));
  CHECK_FALSE(split_tile_certificate(fixture(prm, pts, {{(ns - 1) * s - m + 0.01, 4 * s}}), src, dst));
  CHECK(split_tile_certificate(fixture(prm, pts, {{(ns - 1) * s - m - 0.01, 4 * s}}), src, dst));

  CHECK_THROWS_AS(split_tile_certificate(fixture(prm, pts, {}), src, {s / 2, 0.0}), GeometryError);
}

TEST_CASE("certified instances admit a two-secure route") {
  const ModelParams prm{9.0, 0.08, 0.2, 1.0, 0.3, 0.5};
  const double d = 3.0;
  const Window w{-3.0, -3.0, 6.0, 6.0, 0.0};
  const std::vector<Vec2> ends{{0.0, 0.0}, {d, 0.0}};
  SimConfig cfg;
  cfg.slot_cap = 20000;
  int certified = 0;
  for (std::uint64_t t = 0; t < 200 && certified < 8; ++t) {
    const RandomStream stream = RandomStream::for_trial(77, t);
    const NetworkRealization r = NetworkRealization::sample(prm, w, stream, ends);
    if (!split_tile_certificate(r, ends[0], ends[1])) continue;
    ++certified;
    const SplitRoute route = two_secure_route(r, 0, 1, cfg, stream);
    CHECK_FALSE(route.censored);
  }
  CHECK(certified >= 3);
}
