#include "scg/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "scg/errors.hpp"
#include "scg/io.hpp"
#include "scg/parallel.hpp"
#include "scg/percolation.hpp"
#include "scg/protocol.hpp"
#include "scg/split_routing.hpp"
#include "scg/stats.hpp"
#include "scg/temporal_routing.hpp"

namespace scg {

using nlohmann::json;

std::string_view to_string(ExperimentKind kind) noexcept {
  switch (kind) {
    case ExperimentKind::degree: return "degree";
    case ExperimentKind::nnc: return "nnc";
    case ExperimentKind::delay: return "delay";
    case ExperimentKind::split_compare: return "split_compare";
    case ExperimentKind::percolation: return "percolation";
    case ExperimentKind::formulas: return "formulas";
  }
  return "unknown";
}

ExperimentKind parse_kind(std::string_view name) {
  if (name == "degree") return ExperimentKind::degree;
  if (name == "nnc") return ExperimentKind::nnc;
  if (name == "delay") return ExperimentKind::delay;
  if (name == "split-compare" || name == "split_compare") return ExperimentKind::split_compare;
  if (name == "percolation") return ExperimentKind::percolation;
  if (name == "formulas") return ExperimentKind::formulas;
  throw InvalidSpec("unknown experiment kind '" + std::string(name) + "'");
}

std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t line_no = 0;
  for (const std::string& raw : split(text, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw InvalidSpec("config line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    if (key.empty()) throw InvalidSpec("config line " + std::to_string(line_no) + ": empty key");
    out.emplace_back(std::string(key), std::string(trim(line.substr(eq + 1))));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

namespace {

std::vector<double> parse_list(std::string_view key, std::string_view value) {
  std::vector<double> out;
  for (const std::string& cell : split(value, ',')) {
    if (trim(cell).empty()) continue;
    try {
      out.push_back(parse_double(trim(cell)));
    } catch (const Error&) {
      throw InvalidSpec(std::string(key) + ": '" + cell + "' is not a number");
    }
  }
  if (out.empty()) throw InvalidSpec(std::string(key) + ": empty list");
  return out;
}

double parse_number(std::string_view key, std::string_view value) {
  try {
    return parse_double(value);
  } catch (const Error&) {
    throw InvalidSpec(std::string(key) + ": '" + std::string(value) + "' is not a number");
  }
}

std::uint64_t parse_count(std::string_view key, std::string_view value) {
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || end != value.data() + value.size() || value.empty())
    throw InvalidSpec(std::string(key) + ": expected a non-negative integer");
  return v;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw InvalidSpec(std::string(key) + ": expected true or false");
}

// Numeric fields that a sweep axis may name.
bool set_numeric_field(ModelParams& p, SimConfig& c, std::string_view field, double v) {
  if (field == "lambda_l") p.lambda_l = v;
  else if (field == "lambda_e") p.lambda_e = v;
  else if (field == "p") p.p = v;
  else if (field == "eta") p.eta = v;
  else if (field == "beta_l") p.beta_l = v;
  else if (field == "beta_e") p.beta_e = v;
  else if (field == "seed") c.seed = static_cast<std::uint64_t>(v);
  else if (field == "trials") c.trials = static_cast<std::uint64_t>(v);
  else if (field == "slot_cap") c.slot_cap = static_cast<std::uint64_t>(v);
  else if (field == "workers") c.workers = static_cast<unsigned>(v);
  else return false;
  return true;
}

void set_window_side(Window& w, double side) {
  w = {-side / 4.0, -side / 2.0, 3.0 * side / 4.0, side / 2.0, 0.0};
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "preset",   "lambda_l",    "lambda_e",  "p",          "eta",          "beta_l",
      "beta_e",   "seed",        "trials",    "slot_cap",   "ed_mode",      "pair_roles",
      "workers",  "x_min",       "y_min",     "x_max",      "y_max",        "guard_margin",
      "window_side", "ratios",   "distances", "distance",   "single_hop",   "d",
      "eps",      "delta",       "delta_cross", "d_cross",  "sweep_mode",   "per_trial_csv",
      "out"};
  return keys;
}

void apply_setting(ExperimentSpec& spec, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key.starts_with("sweep_") && key != "sweep_mode") {
    const std::string field(key.substr(6));
    ModelParams p;
    SimConfig c;
    if (!set_numeric_field(p, c, field, 0.0))
      throw InvalidSpec("sweep field '" + field + "' is not a numeric model or config field");
    SweepAxis axis{field, parse_list(key, value)};
    auto it = std::find_if(spec.sweep.begin(), spec.sweep.end(),
                           [&](const SweepAxis& a) { return a.field == field; });
    if (it != spec.sweep.end()) *it = std::move(axis);
    else spec.sweep.push_back(std::move(axis));
    return;
  }
  if (key == "preset") return apply_preset(spec, value);
  if (key == "seed" || key == "trials" || key == "slot_cap" || key == "workers") {
    const std::uint64_t v = parse_count(key, value);
    if (key == "seed") spec.config.seed = v;
    else if (key == "trials") spec.config.trials = v;
    else if (key == "slot_cap") spec.config.slot_cap = v;
    else spec.config.workers = static_cast<unsigned>(v);
    return;
  }
  if (set_numeric_field(spec.params, spec.config, key, 0.0)) {
    set_numeric_field(spec.params, spec.config, key, parse_number(key, value));
    return;
  }
  if (key == "ed_mode") {
    if (value == "static") spec.config.ed_mode = EdMode::static_eds;
    else if (value == "per_slot_iid") spec.config.ed_mode = EdMode::per_slot_iid;
    else throw InvalidSpec("ed_mode must be static or per_slot_iid");
  } else if (key == "pair_roles") {
    if (value == "palm") spec.config.pair_roles = PairRoles::palm;
    else if (value == "aloha") spec.config.pair_roles = PairRoles::aloha;
    else throw InvalidSpec("pair_roles must be palm or aloha");
  } else if (key == "x_min" || key == "y_min" || key == "x_max" || key == "y_max" ||
             key == "guard_margin") {
    const double v = parse_number(key, value);
    if (!spec.custom_window) spec.window = default_delay_window();
    spec.custom_window = true;
    if (key == "x_min") spec.window.x_min = v;
    else if (key == "y_min") spec.window.y_min = v;
    else if (key == "x_max") spec.window.x_max = v;
    else if (key == "y_max") spec.window.y_max = v;
    else spec.window.guard_margin = v;
  } else if (key == "window_side") {
    set_window_side(spec.window, parse_number(key, value));
    spec.custom_window = true;
  } else if (key == "ratios") {
    spec.ratios = parse_list(key, value);
  } else if (key == "distances") {
    spec.distances = parse_list(key, value);
  } else if (key == "distance") {
    spec.split_distance = parse_number(key, value);
  } else if (key == "single_hop") {
    if (value == "nnc") spec.single_hop = SingleHopKind::nnc;
    else if (value == "one_hop") spec.single_hop = SingleHopKind::one_hop;
    else throw InvalidSpec("single_hop must be nnc or one_hop");
  } else if (key == "d") {
    spec.bounds.d = parse_number(key, value);
  } else if (key == "eps") {
    spec.bounds.eps = parse_number(key, value);
  } else if (key == "delta") {
    spec.bounds.delta = parse_number(key, value);
  } else if (key == "delta_cross") {
    spec.bounds.delta_cross = parse_number(key, value);
  } else if (key == "d_cross") {
    spec.bounds.d_cross = parse_number(key, value);
  } else if (key == "sweep_mode") {
    if (value == "product") spec.zip_sweep = false;
    else if (value == "zip") spec.zip_sweep = true;
    else throw InvalidSpec("sweep_mode must be product or zip");
  } else if (key == "per_trial_csv") {
    spec.per_trial_csv = parse_bool(key, value);
  } else if (key == "out") {
    spec.output_path = std::string(value);
  } else {
    throw InvalidSpec("unknown config key '" + std::string(key) + "'");
  }
}

void apply_preset(ExperimentSpec& spec, std::string_view name) {
  if (name == "fig1") {
    spec.params = {1.0, 0.1, 0.5, 1.0, 0.2, 0.6};
    spec.config.ed_mode = EdMode::per_slot_iid;
    spec.config.pair_roles = PairRoles::palm;
    spec.config.slot_cap = 1000000;
    spec.ratios = {0.2, 0.3, 0.4, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0};
    spec.sweep = {{"p", {0.25, 0.5, 0.75}}};
    spec.zip_sweep = false;
    spec.single_hop = SingleHopKind::nnc;
  } else if (name == "fig2") {
    spec.params = {1.0, 0.1, 0.3, 1.0, 1.2, 0.8};
    spec.config.slot_cap = 100000;
    spec.config.trials = 200;
    spec.distances = {2.0, 4.0, 6.0, 8.0, 10.0};
    set_window_side(spec.window, 20.0);
    spec.custom_window = true;
    spec.sweep = {{"p", {0.3, 0.5, 0.3}}, {"eta", {1.0, 1.0, 2.0}}};
    spec.zip_sweep = true;
  } else {
    throw InvalidSpec("unknown preset '" + std::string(name) + "' (fig1, fig2)");
  }
}

std::vector<SweepCell> expand_sweep(const ExperimentSpec& spec) {
  std::vector<SweepCell> cells;
  const std::size_t axes = spec.sweep.size();
  if (axes == 0) {
    cells.push_back({spec.params, spec.config, {}});
    return cells;
  }
  if (spec.zip_sweep) {
    const std::size_t n = spec.sweep.front().values.size();
    for (const SweepAxis& a : spec.sweep)
      if (a.values.size() != n) throw InvalidSpec("zipped sweep axes must have equal lengths");
    for (std::size_t i = 0; i < n; ++i) {
      SweepCell cell{spec.params, spec.config, {}};
      for (const SweepAxis& a : spec.sweep) {
        set_numeric_field(cell.params, cell.config, a.field, a.values[i]);
        cell.coords.emplace_back(a.field, a.values[i]);
      }
      cells.push_back(std::move(cell));
    }
    return cells;
  }
  std::vector<std::size_t> idx(axes, 0);
  while (true) {
    SweepCell cell{spec.params, spec.config, {}};
    for (std::size_t a = 0; a < axes; ++a) {
      const double v = spec.sweep[a].values[idx[a]];
      set_numeric_field(cell.params, cell.config, spec.sweep[a].field, v);
      cell.coords.emplace_back(spec.sweep[a].field, v);
    }
    cells.push_back(std::move(cell));
    std::size_t a = axes;
    while (a > 0) {
      --a;
      if (++idx[a] < spec.sweep[a].values.size()) break;
      idx[a] = 0;
      if (a == 0) return cells;
    }
  }
}

void validate(const ExperimentSpec& spec) {
  for (const SweepAxis& a : spec.sweep)
    if (a.values.empty()) throw InvalidSpec("sweep axis '" + a.field + "' has no values");
  for (const SweepCell& cell : expand_sweep(spec)) {
    require_valid(cell.params);
    require_valid(cell.config);
  }
  if (spec.custom_window) require_valid(spec.window);
  for (double r : spec.ratios)
    if (!(r > 0.0)) throw InvalidSpec("ratios must be > 0");
  for (double d : spec.distances)
    if (!(d > 0.0) || !std::isfinite(d)) throw InvalidSpec("distances must be finite and > 0");
  if (spec.kind == ExperimentKind::delay && spec.distances.empty())
    throw InvalidSpec("delay needs at least one distance");
  if (!(spec.split_distance > 0.0)) throw InvalidSpec("distance must be > 0");
}

Window degree_window(const ModelParams& params) {
  return Window::centered(1.01 * params.eta * (1.0 + std::max(params.beta_l, params.beta_e)));
}

std::vector<DegreeRow> degree_experiment(const ModelParams& params, const SimConfig& config,
                                         const Window& window) {
  require_valid(params);
  require_valid(config);
  std::vector<DegreeRow> rows(config.trials);
  parallel_for(config.trials, config.workers, [&](std::size_t trial) {
    const RandomStream stream = RandomStream::for_trial(config.seed, trial);
    DegreeRow& row = rows[trial];
    row = {params.lambda_l, params.lambda_e, params.p, trial, 0, 0};
    row.out_degree = sample_out_degree(params, window, stream);
    row.in_degree = sample_in_degree(params, window, stream.substream(StreamTag::fixture));
  });
  return rows;
}

void write_degree_csv(std::span<const DegreeRow> rows, const std::filesystem::path& path) {
  CsvWriter csv({"lambda_l", "lambda_e", "p", "trial", "out_degree", "in_degree"});
  for (const DegreeRow& r : rows) {
    csv.cell(r.lambda_l).cell(r.lambda_e).cell(r.p).cell(r.trial).cell(r.out_degree).cell(r.in_degree);
    csv.end_row();
  }
  csv.save(path);
}

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// Value of `fn`, or {"error": message} when it throws a library error.
json guarded(const std::function<json()>& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    return json{{"error", e.what()}};
  }
}

json params_json(const ModelParams& p) {
  return {{"lambda_l", p.lambda_l}, {"lambda_e", p.lambda_e}, {"p", p.p},
          {"eta", p.eta},           {"beta_l", p.beta_l},     {"beta_e", p.beta_e}};
}

json coords_json(const SweepCell& cell) {
  json out = json::object();
  for (const auto& [k, v] : cell.coords) out[k] = v;
  return out;
}

json stats_json(const RunningStats& s) {
  return {{"mean", number_or_null(s.mean())}, {"stderr", number_or_null(s.stderr_of_mean())}, {"n", s.count()}};
}

std::filesystem::path cell_file(const ExperimentSpec& spec, std::string_view stem, std::size_t cell,
                                std::size_t cells) {
  std::string name(stem);
  if (cells > 1) name += "_" + std::to_string(cell);
  return spec.output_path / (name + ".csv");
}

json run_degree(const ExperimentSpec& spec, const std::vector<SweepCell>& cells) {
  json out = json::array();
  std::vector<DegreeRow> all;
  for (const SweepCell& cell : cells) {
    const Window w = spec.custom_window ? spec.window : degree_window(cell.params);
    const auto rows = degree_experiment(cell.params, cell.config, w);
    RunningStats so, si;
    for (const DegreeRow& r : rows) {
      so.add(static_cast<double>(r.out_degree));
      si.add(static_cast<double>(r.in_degree));
    }
    const double ao = avg_out_degree(cell.params), ai = avg_in_degree(cell.params);
    auto z = [](const RunningStats& s, double a) {
      const double se = s.stderr_of_mean();
      return se > 0.0 ? (s.mean() - a) / se : (s.mean() == a ? 0.0 : std::numeric_limits<double>::infinity());
    };
    out.push_back({{"params", params_json(cell.params)},
                   {"trials", rows.size()},
                   {"out_degree", stats_json(so)},
                   {"in_degree", stats_json(si)},
                   {"avg_out_degree", ao},
                   {"avg_in_degree", ai},
                   {"z_out", number_or_null(z(so, ao))},
                   {"z_in", number_or_null(z(si, ai))}});
    all.insert(all.end(), rows.begin(), rows.end());
  }
  write_degree_csv(all, spec.output_path / "degree.csv");
  return out;
}

json run_nnc(const ExperimentSpec& spec, const std::vector<SweepCell>& cells) {
  json out = json::array();
  CsvWriter csv({"ratio", "lambda_l", "lambda_e", "p", "mean", "stderr", "censor_rate", "analytic"});
  std::size_t index = 0;
  std::vector<std::pair<ModelParams, const SweepCell*>> points;
  for (const SweepCell& cell : cells) {
    if (spec.ratios.empty()) {
      points.emplace_back(cell.params, &cell);
      continue;
    }
    for (double ratio : spec.ratios) {
      ModelParams p = cell.params;
      p.lambda_e = p.lambda_l / ratio;
      points.emplace_back(p, &cell);
    }
  }
  for (const auto& [params, cell] : points) {
    const auto results = run_single_hop_trials(params, cell->config, spec.single_hop);
    RunningStats s;
    std::size_t censored = 0;
    for (const CensoredSlots& r : results) {
      if (r.censored) ++censored;
      else s.add(static_cast<double>(r.value));
    }
    const double ratio = params.lambda_e > 0.0 ? params.lambda_l / params.lambda_e
                                               : std::numeric_limits<double>::infinity();
    const double censor_rate = static_cast<double>(censored) / static_cast<double>(results.size());
    const double analytic = spec.single_hop == SingleHopKind::nnc ? mean_nnc_time(params)
                                                                  : std::numeric_limits<double>::quiet_NaN();
    csv.cell(ratio).cell(params.lambda_l).cell(params.lambda_e).cell(params.p).cell(s.mean())
        .cell(s.stderr_of_mean()).cell(censor_rate).cell(analytic);
    csv.end_row();
    if (spec.per_trial_csv)
      write_nnc_csv(results, cell->config.ed_mode, cell_file(spec, "nnc_trials", index, points.size()));
    out.push_back({{"params", params_json(params)},
                   {"ratio", number_or_null(ratio)},
                   {"trials", results.size()},
                   {"mean", number_or_null(s.mean())},
                   {"stderr", number_or_null(s.stderr_of_mean())},
                   {"censor_rate", censor_rate},
                   {"censored_mean", censored_mean(results)},
                   {"mean_nnc_time", number_or_null(analytic)}});
    ++index;
  }
  csv.save(spec.output_path / "nnc.csv");
  return out;
}

json run_delay(const ExperimentSpec& spec, const std::vector<SweepCell>& cells) {
  json out = json::array();
  std::vector<DelayRow> all;
  std::vector<double> distances = spec.distances;
  std::sort(distances.begin(), distances.end());
  for (const SweepCell& cell : cells) {
    const Window w = spec.custom_window ? spec.window : default_delay_window();
    const auto rows = delay_vs_distance_experiment(cell.params, cell.config, distances, w);
    const auto summaries = summarize(rows);
    json per = json::array();
    for (const DelaySummary& s : summaries)
      per.push_back({{"distance", s.distance},
                     {"mean", number_or_null(s.delay.mean())},
                     {"stderr", number_or_null(s.delay.stderr_of_mean())},
                     {"trials", s.trials},
                     {"censored", s.censored},
                     {"censor_rate", s.censor_rate()},
                     {"delay_lower_bound_opt", delay_lower_bound_opt(cell.params, s.distance)}});
    json fit = guarded([&] {
      const FitResult f = delay_fit(summaries);
      return json{{"slope", f.slope}, {"intercept", f.intercept}, {"r_squared", f.r_squared},
                  {"slope_stderr", f.slope_stderr}};
    });
    out.push_back({{"params", params_json(cell.params)}, {"sweep", coords_json(cell)},
                   {"distances", per}, {"fit", fit}});
    all.insert(all.end(), rows.begin(), rows.end());
  }
  write_delay_csv(all, spec.output_path / "delay.csv");
  return out;
}

json run_split(const ExperimentSpec& spec, const std::vector<SweepCell>& cells) {
  json out = json::array();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const SweepCell& cell = cells[i];
    const Window w = spec.custom_window ? spec.window : default_delay_window();
    const auto rows = split_compare_experiment(cell.params, cell.config, spec.split_distance, w);
    std::size_t split_ok = 0, direct_ok = 0, chosen = 0, violations = 0;
    RunningStats split_delay, direct_delay;
    for (const SplitRow& row : rows) {
      const SplitRoute& r = row.route;
      split_ok += !r.censored;
      direct_ok += !r.direct.censored;
      chosen += r.kind == RouteKind::split;
      if (!r.censored && !r.direct.censored) {
        split_delay.add(static_cast<double>(r.delay));
        direct_delay.add(static_cast<double>(r.direct.delay));
        violations += r.delay > r.direct.delay;
      }
      violations += r.censored && !r.direct.censored;
    }
    const double n = static_cast<double>(rows.size());
    write_split_csv(rows, cell_file(spec, "split", i, cells.size()));
    write_direct_csv(rows, cell_file(spec, "direct", i, cells.size()));
    out.push_back({{"params", params_json(cell.params)},
                   {"sweep", coords_json(cell)},
                   {"distance", spec.split_distance},
                   {"trials", rows.size()},
                   {"split_censor_rate", 1.0 - static_cast<double>(split_ok) / n},
                   {"direct_censor_rate", 1.0 - static_cast<double>(direct_ok) / n},
                   {"split_chosen", chosen},
                   {"joint_split_delay", stats_json(split_delay)},
                   {"joint_direct_delay", stats_json(direct_delay)},
                   {"dominance_violations", violations}});
  }
  return out;
}

json run_percolation(const ExperimentSpec& spec, const std::vector<SweepCell>& cells) {
  json out = json::array();
  std::vector<PercolationRow> all;
  for (const SweepCell& cell : cells) {
    std::vector<std::pair<double, double>> densities;
    if (spec.ratios.empty()) densities.emplace_back(cell.params.lambda_l, cell.params.lambda_e);
    for (double r : spec.ratios) densities.emplace_back(cell.params.lambda_l, cell.params.lambda_l / r);
    const Window w = spec.custom_window ? spec.window : Window::centered(10.0, cell.params.eta);
    const auto rows = percolation_sweep(cell.params, densities, w, cell.config);
    json per = json::array();
    for (const PercolationCell& c : summarize(rows))
      per.push_back({{"lambda_l", c.lambda_l},
                     {"lambda_e", c.lambda_e},
                     {"crossing", stats_json(c.crossing)},
                     {"largest_fraction", stats_json(c.largest_fraction)}});
    out.push_back({{"params", params_json(cell.params)},
                   {"sweep", coords_json(cell)},
                   {"cells", per},
                   {"percolation_bound_sp", guarded([&] {
                      const SpBound b = percolation_bound_sp(cell.params, spec.bounds);
                      return json{{"rho_sp", b.rho_sp}, {"rho_nsp", b.rho_nsp}, {"threshold", b.threshold}};
                    })}});
    all.insert(all.end(), rows.begin(), rows.end());
  }
  write_percolation_csv(all, spec.output_path / "percolation.csv");
  return out;
}

json run_formulas(const ExperimentSpec& spec, const std::vector<SweepCell>& cells) {
  json out = json::array();
  for (const SweepCell& cell : cells) {
    json entry = evaluate_formulas(cell.params, spec.bounds, spec.distances);
    entry["params"] = params_json(cell.params);
    json sweep = json::array();
    for (double ratio : spec.ratios) {
      ModelParams p = cell.params;
      p.lambda_e = p.lambda_l / ratio;
      sweep.push_back({{"ratio", ratio},
                       {"lambda_e", p.lambda_e},
                       {"mean_nnc_time", number_or_null(mean_nnc_time(p))},
                       {"avg_out_degree", avg_out_degree(p)},
                       {"avg_in_degree", avg_in_degree(p)}});
    }
    entry["ratio_sweep"] = sweep;
    out.push_back(entry);
  }
  return out;
}

}  // namespace

json evaluate_formulas(const ModelParams& params, const BoundInputs& inputs,
                       std::span<const double> distances) {
  require_valid(params);
  json out;
  out["gamma_fn"] = {{"beta_l", gamma_fn(params.beta_l)}, {"beta_e", gamma_fn(params.beta_e)}};
  out["avg_out_degree"] = avg_out_degree(params);
  out["avg_in_degree"] = avg_in_degree(params);
  out["degree_limits"] = guarded([&] {
    const DegreeLimits l = degree_limits(params);
    return json{{"interference_limited", l.interference_limited}, {"noise_limited", l.noise_limited}};
  });
  out["mean_nnc_time"] = number_or_null(mean_nnc_time(params));
  out["critical_ratio"] = number_or_null(critical_ratio(params.p, params.beta_l, params.beta_e));
  out["percolation_bound_nsp"] = guarded([&] {
    const NspBound b = percolation_bound_nsp(params, inputs);
    return json{{"multiplier", b.multiplier}, {"n_s", b.n_s}, {"c", b.c}};
  });
  out["percolation_bound_sp"] = guarded([&] {
    const SpBound b = percolation_bound_sp(params, inputs);
    return json{{"rho_sp", b.rho_sp}, {"rho_nsp", b.rho_nsp}, {"threshold", b.threshold}, {"n_s", b.n_s}, {"c", b.c}};
  });
  out["hop_bound"] = guarded([&] { return json(hop_bound(params, inputs)); });
  out["delay_upper_bound"] = guarded([&] {
    return json{{"nsp", number_or_null(delay_upper_bound(params, inputs, Scheme::nsp))},
                {"sp", number_or_null(delay_upper_bound(params, inputs, Scheme::sp))}};
  });
  json lb = json::array();
  for (double d : distances)
    lb.push_back({{"d", d}, {"value", number_or_null(delay_lower_bound_opt(params, d))}});
  out["delay_lower_bound_opt"] = lb;
  return out;
}

json run(const ExperimentSpec& spec) {
  validate(spec);
  const std::vector<SweepCell> cells = expand_sweep(spec);
  if (spec.kind != ExperimentKind::formulas) {
    std::error_code ec;
    std::filesystem::create_directories(spec.output_path, ec);
    if (ec) throw IoError("cannot create " + spec.output_path.string() + ": " + ec.message());
  }
  json results;
  switch (spec.kind) {
    case ExperimentKind::degree: results = run_degree(spec, cells); break;
    case ExperimentKind::nnc: results = run_nnc(spec, cells); break;
    case ExperimentKind::delay: results = run_delay(spec, cells); break;
    case ExperimentKind::split_compare: results = run_split(spec, cells); break;
    case ExperimentKind::percolation: results = run_percolation(spec, cells); break;
    case ExperimentKind::formulas: results = run_formulas(spec, cells); break;
  }
  return {{"kind", to_string(spec.kind)},
          {"seed", spec.config.seed},
          {"trials", spec.config.trials},
          {"slot_cap", spec.config.slot_cap},
          {"ed_mode", spec.config.ed_mode == EdMode::static_eds ? "static" : "per_slot_iid"},
          {"results", results}};
}

}  // namespace scg
