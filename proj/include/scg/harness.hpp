#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "scg/analytics.hpp"
#include "scg/model.hpp"
#include "scg/nnc_dynamics.hpp"

namespace scg {

enum class ExperimentKind { degree, nnc, delay, split_compare, percolation, formulas };

std::string_view to_string(ExperimentKind kind) noexcept;
/// Accepts both `split-compare` and `split_compare`.
ExperimentKind parse_kind(std::string_view name);

struct SweepAxis {
  std::string field;
  std::vector<double> values;
};

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::formulas;
  ModelParams params;
  SimConfig config;
  Window window;               ///< used when custom_window is set
  bool custom_window = false;  ///< otherwise each kind picks its own window
  std::vector<SweepAxis> sweep;
  bool zip_sweep = false;      ///< zip the axes instead of taking their product
  std::vector<double> ratios;  ///< λ_l/λ_e values; λ_e = λ_l / ratio
  std::vector<double> distances{2.0, 4.0, 6.0, 8.0, 10.0};
  double split_distance = 6.0;
  SingleHopKind single_hop = SingleHopKind::nnc;
  BoundInputs bounds;
  bool per_trial_csv = true;
  std::filesystem::path output_path = "scg_out";
};

/// Ordered `key = value` pairs; `#` starts a comment. Throws InvalidSpec on
/// lines without `=` or with an empty key.
std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text);
std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path);

/// Keys known to apply_setting besides `sweep_<field>`.
const std::vector<std::string>& config_keys();

/// Applies one key. `preset` loads a preset; `sweep_<field>` adds an axis.
void apply_setting(ExperimentSpec& spec, std::string_view key, std::string_view value);

/// `fig1` (phase transition) or `fig2` (delay against distance).
void apply_preset(ExperimentSpec& spec, std::string_view name);

/// Throws InvalidSpec or InvalidParam.
void validate(const ExperimentSpec& spec);

struct SweepCell {
  ModelParams params;
  SimConfig config;
  std::vector<std::pair<std::string, double>> coords;
};

/// Every parameter point named by the sweep axes, first axis outermost.
std::vector<SweepCell> expand_sweep(const ExperimentSpec& spec);

struct DegreeRow {
  double lambda_l = 0.0;
  double lambda_e = 0.0;
  double p = 0.0;
  std::uint64_t trial = 0;
  std::size_t out_degree = 0;
  std::size_t in_degree = 0;
};

/// Palm degree trials. Out- and in-degree come from independent realizations.
std::vector<DegreeRow> degree_experiment(const ModelParams& params, const SimConfig& config,
                                         const Window& window);
Window degree_window(const ModelParams& params);

/// `lambda_l,lambda_e,p,trial,out_degree,in_degree`
void write_degree_csv(std::span<const DegreeRow> rows, const std::filesystem::path& path);

/// All closed forms at `params`, keyed by operation name.
nlohmann::json evaluate_formulas(const ModelParams& params, const BoundInputs& inputs,
                                 std::span<const double> distances);

/// Runs the experiment, writes its CSV files under output_path and returns
/// the summary.
nlohmann::json run(const ExperimentSpec& spec);

}  // namespace scg
