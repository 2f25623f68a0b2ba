#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "scg/errors.hpp"
#include "scg/harness.hpp"
#include "scg/random.hpp"
#include "scg/stats.hpp"

using namespace scg;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("scg_harness_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("linear fit on exact and noisy data") {
  const std::vector<std::pair<double, double>> line{{0, 0}, {1, 2}, {2, 4}};
  const FitResult a = linear_fit(line);
  CHECK(a.slope == doctest::Approx(2.0));
  CHECK(a.intercept == doctest::Approx(0.0));
  CHECK(a.r_squared == doctest::Approx(1.0));

  const std::vector<std::pair<double, double>> flat{{0, 1}, {1, 1}};
  const FitResult b = linear_fit(flat);
  CHECK(b.slope == doctest::Approx(0.0));
  CHECK(b.intercept == doctest::Approx(1.0));
  CHECK(b.r_squared >= 0.0);
  CHECK(b.r_squared <= 1.0);

  RandomStream s(9);
  std::vector<std::pair<double, double>> noisy;
  for (int i = 0; i < 100; ++i) {
    const double x = i / 10.0;
    // sum of uniforms: mean 0, variance 1
    double e = 0.0;
    for (int k = 0; k < 12; ++k) e += s.uniform();
    noisy.emplace_back(x, 3.0 * x + (e - 6.0));
  }
  const FitResult c = linear_fit(noisy);
  CHECK(std::abs(c.slope - 3.0) < 3.0 * c.slope_stderr);
  CHECK(c.r_squared <= 1.0);

  const std::vector<std::pair<double, double>> same_x{{1, 0}, {1, 2}};
  CHECK_THROWS_AS(linear_fit(same_x), DegenerateInput);
  CHECK_THROWS_AS(linear_fit(std::span<const std::pair<double, double>>{}), DegenerateInput);
}

TEST_CASE("config text parsing") {
  const auto kv = parse_config_text("# header\nlambda_l = 2.5\n\n  p=0.3   # inline\nsweep_beta_e = 0.2, 0.4\n");
  REQUIRE(kv.size() == 3);
  CHECK(kv[0] == std::pair<std::string, std::string>{"lambda_l", "2.5"});
  CHECK(kv[1] == std::pair<std::string, std::string>{"p", "0.3"});
  CHECK_THROWS_AS(parse_config_text("lambda_l 2"), InvalidSpec);
  CHECK_THROWS_AS(parse_config_text(" = 2"), InvalidSpec);

  ExperimentSpec spec;
  for (const auto& [k, v] : kv) apply_setting(spec, k, v);
  CHECK(spec.params.lambda_l == 2.5);
  CHECK(spec.params.p == 0.3);
  REQUIRE(spec.sweep.size() == 1);
  CHECK(spec.sweep[0].values == std::vector<double>{0.2, 0.4});

  apply_setting(spec, "ed_mode", "per_slot_iid");
  CHECK(spec.config.ed_mode == EdMode::per_slot_iid);
  apply_setting(spec, "seed", "18446744073709551615");
  CHECK(spec.config.seed == 18446744073709551615ULL);
  apply_setting(spec, "window_side", "20");
  CHECK(spec.custom_window);
  CHECK(spec.window.width() == 20.0);
  CHECK(spec.window.x_min == -5.0);

  CHECK_THROWS_AS(apply_setting(spec, "sweep_colour", "1,2"), InvalidSpec);
  CHECK_THROWS_AS(apply_setting(spec, "no_such_key", "1"), InvalidSpec);
  CHECK_THROWS_AS(apply_setting(spec, "trials", "2.5"), InvalidSpec);
  CHECK_THROWS_AS(apply_setting(spec, "p", "abc"), InvalidSpec);
  CHECK_THROWS_AS(apply_setting(spec, "preset", "fig9"), InvalidSpec);
  CHECK_THROWS_AS(parse_kind("plot"), InvalidSpec);
  CHECK(parse_kind("split-compare") == ExperimentKind::split_compare);
}

TEST_CASE("sweeps expand as products or zips") {
  ExperimentSpec spec;
  apply_setting(spec, "sweep_lambda_l", "0.5,1,2");
  apply_setting(spec, "sweep_p", "0.25,0.75");
  const auto cells = expand_sweep(spec);
  REQUIRE(cells.size() == 6);
  CHECK(cells[0].params.lambda_l == 0.5);
  CHECK(cells[0].params.p == 0.25);
  CHECK(cells[1].params.p == 0.75);
  CHECK(cells[5].params.lambda_l == 2.0);

  apply_setting(spec, "sweep_mode", "zip");
  CHECK_THROWS_AS(expand_sweep(spec), InvalidSpec);
  apply_setting(spec, "sweep_p", "0.1,0.2,0.3");
  const auto zipped = expand_sweep(spec);
  REQUIRE(zipped.size() == 3);
  CHECK(zipped[2].params.lambda_l == 2.0);
  CHECK(zipped[2].params.p == 0.3);

  apply_setting(spec, "sweep_p", "0.1,1.0,0.3");
  CHECK_THROWS_AS(validate(spec), InvalidParam);
}

TEST_CASE("presets carry their parameter sets") {
  ExperimentSpec a;
  apply_preset(a, "fig1");
  CHECK(a.params.beta_e == 0.6);
  CHECK(a.params.beta_l == 0.2);
  CHECK(a.config.ed_mode == EdMode::per_slot_iid);

  ExperimentSpec b;
  apply_preset(b, "fig2");
  CHECK(b.params.lambda_l == 1.0);
  CHECK(b.params.lambda_e == 0.1);
  CHECK(b.params.beta_e == 0.8);
  CHECK(b.params.beta_l == 1.2);
  CHECK(b.window.width() == 20.0);
  CHECK(b.window.height() == 20.0);
  const auto cells = expand_sweep(b);
  REQUIRE(cells.size() == 3);
  CHECK(cells[2].params.p == 0.3);
  CHECK(cells[2].params.eta == 2.0);
}

TEST_CASE("formulas summary names every operation and follows the ratio sweep") {
  ExperimentSpec spec;
  apply_preset(spec, "fig1");
  spec.kind = ExperimentKind::formulas;
  const nlohmann::json j = run(spec);
  REQUIRE(j["results"].size() == 3);
  const auto& first = j["results"][0];
  for (const char* key : {"gamma_fn", "avg_out_degree", "avg_in_degree", "degree_limits", "mean_nnc_time",
                          "percolation_bound_nsp", "percolation_bound_sp", "hop_bound", "delay_upper_bound",
                          "delay_lower_bound_opt"})
    CHECK(first.contains(key));
  const auto& sweep = first["ratio_sweep"];
  REQUIRE(sweep.size() == spec.ratios.size());
  // subcritical ratios report null, then the mean decreases with the ratio
  CHECK(sweep[0]["mean_nnc_time"].is_null());
  double prev = std::numeric_limits<double>::infinity();
  for (const auto& row : sweep) {
    if (row["mean_nnc_time"].is_null()) continue;
    const double v = row["mean_nnc_time"].get<double>();
    CHECK(v < prev);
    prev = v;
  }
  CHECK(std::isfinite(prev));
}

TEST_CASE("runs are deterministic and independent of the worker count") {
  auto go = [](ExperimentKind kind, unsigned workers, const std::string& tag) {
    ExperimentSpec spec;
    spec.kind = kind;
    spec.params = {1.0, 0.1, 0.3, 1.0, 0.5, 0.5};
    spec.config.trials = 30;
    spec.config.slot_cap = 2000;
    spec.config.workers = workers;
    spec.config.seed = 21;
    spec.distances = {2.0, 4.0};
    spec.ratios = {2.0, 10.0};
    spec.output_path = scratch(tag);
    const nlohmann::json j = run(spec);
    return std::make_pair(j.dump(), spec.output_path);
  };
  const std::vector<std::pair<ExperimentKind, std::string>> kinds{
      {ExperimentKind::degree, "degree.csv"},
      {ExperimentKind::nnc, "nnc.csv"},
      {ExperimentKind::delay, "delay.csv"},
      {ExperimentKind::split_compare, "split.csv"},
      {ExperimentKind::percolation, "percolation.csv"}};
  for (const auto& [kind, file] : kinds) {
    CAPTURE(file);
    const auto [j1, d1] = go(kind, 1, "a");
    const std::string c1 = slurp(d1 / file);
    const auto [j2, d2] = go(kind, 3, "b");
    const std::string c2 = slurp(d2 / file);
    CHECK(j1 == j2);
    CHECK(!c1.empty());
    CHECK(c1 == c2);
    std::filesystem::remove_all(d1);
    std::filesystem::remove_all(d2);
  }
}

TEST_CASE("csv headers follow the documented schemas") {
  ExperimentSpec spec;
  spec.params = {1.0, 0.1, 0.3, 1.0, 0.5, 0.5};
  spec.config.trials = 4;
  spec.config.slot_cap = 500;
  spec.ratios = {5.0};
  spec.distances = {2.0};
  spec.output_path = scratch("schema");
  auto header = [&](const std::string& file) {
    const std::string text = slurp(spec.output_path / file);
    return text.substr(0, text.find('\n'));
  };
  spec.kind = ExperimentKind::degree;
  run(spec);
  CHECK(header("degree.csv") == "lambda_l,lambda_e,p,trial,out_degree,in_degree");
  spec.kind = ExperimentKind::nnc;
  run(spec);
  CHECK(header("nnc.csv") == "ratio,lambda_l,lambda_e,p,mean,stderr,censor_rate,analytic");
  CHECK(header("nnc_trials.csv") == "trial,mode,value,censored");
  spec.kind = ExperimentKind::delay;
  run(spec);
  CHECK(header("delay.csv") == "distance,p,eta,trial,delay,hops,censored");
  spec.kind = ExperimentKind::split_compare;
  run(spec);
  CHECK(header("split.csv") == "trial,kind,delay,hops_a,hops_b,censored");
  CHECK(header("direct.csv") == "trial,delay,hops,censored");
  spec.kind = ExperimentKind::percolation;
  run(spec);
  CHECK(header("percolation.csv") == "ratio,lambda_l,lambda_e,trial,crossing,largest_fraction");
  std::filesystem::remove_all(spec.output_path);
}
