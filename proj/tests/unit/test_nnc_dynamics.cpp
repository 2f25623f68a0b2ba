#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "scg/analytics.hpp"
#include "scg/errors.hpp"
#include "scg/nnc_dynamics.hpp"
#include "scg/stats.hpp"

using namespace scg;

namespace {

NetworkRealization fixture(const ModelParams& prm, std::vector<Vec2> legit, std::vector<Vec2> eds) {
  const Window w = Window::centered(5.0);
  return NetworkRealization::from_points(prm, PointSet::from_positions(legit, w),
                                         PointSet::from_positions(eds, w));
}

}  // namespace

TEST_CASE("unobstructed nearest neighbour connects in the first slot") {
  const ModelParams prm{1.0, 0.0, 0.4, 1.0, 0.0, 0.5};
  const auto r = fixture(prm, {{0, 0}, {0.3, 0}, {2, 2}}, {});
  SimConfig cfg;
  cfg.slot_cap = 50;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const CensoredSlots c = simulate_nnc_time(r, cfg, RandomStream(s));
    CHECK(c.value == 1);
    CHECK_FALSE(c.censored);
  }
}

TEST_CASE("static eavesdropper inside the decoding disk censors") {
  const ModelParams prm{1.0, 1.0, 0.4, 1.0, 0.0, 1.0};
  const auto r = fixture(prm, {{0, 0}, {0.5, 0}}, {{0.0, 0.2}});
  SimConfig cfg;
  cfg.slot_cap = 77;
  const CensoredSlots c = simulate_nnc_time(r, cfg, RandomStream(1));
  CHECK(c.censored);
  CHECK(c.value == 77);
}

TEST_CASE("lonely origin has no neighbour") {
  const ModelParams prm;
  const auto r = fixture(prm, {{0, 0}}, {});
  CHECK_THROWS_AS(simulate_nnc_time(r, SimConfig{}, RandomStream(1)), NoNeighbor);
  CHECK(nearest_neighbor_of_origin(fixture(prm, {{0, 0}, {1, 0}, {0, 1}}, {})) == 1);
}

TEST_CASE("nnc mean matches the closed form with fresh eavesdroppers") {
  const ModelParams prm{1.0, 1.0, 0.5, 1.0, 0.0, 0.5};
  SimConfig cfg;
  cfg.trials = 100000;
  cfg.slot_cap = 1000000;
  cfg.ed_mode = EdMode::per_slot_iid;
  cfg.seed = 11;
  RunningStats st;
  for (const auto& c : run_single_hop_trials(prm, cfg, SingleHopKind::nnc)) {
    REQUIRE_FALSE(c.censored);
    REQUIRE(c.value >= 1);
    st.add(static_cast<double>(c.value));
  }
  CHECK(mean_nnc_time(prm) == doctest::Approx(4.0 / 3.0));
  CHECK(std::abs(st.mean() - 4.0 / 3.0) < 3.0 * st.stderr_of_mean());
}

TEST_CASE("interference term matches with a nonzero guard factor") {
  const ModelParams prm{1.0, 0.2, 0.3, 1.0, 0.8, 0.6};
  SimConfig cfg;
  cfg.trials = 60000;
  cfg.slot_cap = 10000000;
  cfg.ed_mode = EdMode::per_slot_iid;
  cfg.seed = 12;
  RunningStats st;
  for (const auto& c : run_single_hop_trials(prm, cfg, SingleHopKind::nnc)) st.add(static_cast<double>(c.value));
  CHECK(std::abs(st.mean() - mean_nnc_time(prm)) < 3.5 * st.stderr_of_mean());
}

TEST_CASE("sampled pair roles scale the mean by 1/(p(1-p))") {
  const ModelParams prm{1.0, 1.0, 0.3, 1.0, 0.0, 0.5};
  SimConfig cfg;
  cfg.trials = 40000;
  cfg.slot_cap = 10000000;
  cfg.ed_mode = EdMode::per_slot_iid;
  cfg.pair_roles = PairRoles::aloha;
  RunningStats st;
  for (const auto& c : run_single_hop_trials(prm, cfg, SingleHopKind::nnc)) st.add(static_cast<double>(c.value));
  const double expected = mean_nnc_time(prm) / (prm.p * (1 - prm.p));
  CHECK(std::abs(st.mean() - expected) < 3.5 * st.stderr_of_mean());
}

TEST_CASE("conditioned on the layout the delay is geometric") {
  const ModelParams prm{1.0, 0.0, 0.3, 1.0, 1.5, 0.0};
  // Origin, nearest neighbour at distance 0.5, two interferers inside B(z, 0.75).
  const auto r = fixture(prm, {{0, 0}, {0.5, 0}, {0.9, 0.3}, {0.5, -0.6}, {3, 3}}, {});
  SimConfig cfg;
  cfg.ed_mode = EdMode::per_slot_iid;
  cfg.pair_roles = PairRoles::aloha;
  cfg.slot_cap = 100000;
  int interferers = 0;
  for (const Point& pt : r.legit.points)
    if (pt.id > 1 && distance(pt.pos(), r.position(1)) < 1.5 * 0.5) ++interferers;
  REQUIRE(interferers == 2);
  const double q = prm.p * (1 - prm.p) * std::pow(1 - prm.p, interferers);

  const int n = 40000, bins = 12;
  std::vector<double> counts(bins, 0.0);
  for (int i = 0; i < n; ++i) {
    const CensoredSlots c = simulate_nnc_time(r, cfg, RandomStream::for_trial(13, static_cast<std::uint64_t>(i)));
    const auto k = std::min<std::uint64_t>(c.value, bins) - 1;
    counts[k] += 1.0;
  }
  double chi2 = 0.0;
  for (int b = 0; b < bins; ++b) {
    const double pk = b < bins - 1 ? q * std::pow(1 - q, b) : std::pow(1 - q, bins - 1);
    const double e = n * pk;
    chi2 += (counts[static_cast<std::size_t>(b)] - e) * (counts[static_cast<std::size_t>(b)] - e) / e;
  }
  // 99.9% quantile of chi-square with 11 degrees of freedom.
  CHECK(chi2 < 31.3);
}

TEST_CASE("one-hop time") {
  // p = 0 keeps the receiver listening while the origin is forced to send.
  const ModelParams prm{1.0, 0.0, 0.0, 1.0, 0.0, 0.5};
  SimConfig cfg;
  cfg.slot_cap = 40;
  const auto near = fixture(prm, {{0, 0}, {0.5, 0}}, {});
  CHECK(simulate_one_hop_time(near, cfg, RandomStream(1)).value == 1);
  const auto isolated = fixture(prm, {{0, 0}, {1.5, 0}}, {});
  const CensoredSlots c = simulate_one_hop_time(isolated, cfg, RandomStream(1));
  CHECK(c.censored);
  CHECK(c.value == 40);
}

TEST_CASE("one-hop censored mean keeps growing with the cap") {
  const ModelParams prm{0.2, 0.1, 0.5, 1.0, 0.2, 0.6};
  SimConfig cfg;
  cfg.trials = 2000;
  double prev = 0.0;
  for (std::uint64_t cap : {100ULL, 1000ULL, 10000ULL}) {
    cfg.slot_cap = cap;
    const double m = censored_mean(run_single_hop_trials(prm, cfg, SingleHopKind::one_hop));
    CHECK(m > 1.02 * prev);
    prev = m;
  }
}

TEST_CASE("trials are reproducible and independent of worker count") {
  const ModelParams prm{1.0, 0.5, 0.5, 1.0, 0.2, 0.6};
  SimConfig cfg;
  cfg.trials = 500;
  cfg.slot_cap = 1000;
  const auto a = run_single_hop_trials(prm, cfg, SingleHopKind::nnc);
  cfg.workers = 3;
  const auto b = run_single_hop_trials(prm, cfg, SingleHopKind::nnc);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].value == b[i].value);
    CHECK(a[i].value <= cfg.slot_cap);
    if (a[i].censored) CHECK(a[i].value == cfg.slot_cap);
  }
  const auto path = std::filesystem::temp_directory_path() / "scg_nnc.csv";
  write_nnc_csv(a, cfg.ed_mode, path);
  CHECK(std::filesystem::file_size(path) > 0);
  std::filesystem::remove(path);
}
