#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scg/errors.hpp"
#include "scg/harness.hpp"
#include "scg/io.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Secure connectivity graph simulator and calculator"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::map<std::string, std::string> flags;
  app.add_option("--config", config_path, "key = value configuration file");
  for (const std::string& key : scg::config_keys())
    app.add_option("--" + key, flags[key], "config key '" + key + "'");
  app.add_option("--set", overrides, "extra key=value settings, e.g. sweep_p=0.25,0.5");

  const std::vector<std::pair<std::string, std::string>> subcommands{
      {"degree", "Palm degree trials"},
      {"nnc", "single-hop connection times over the density-ratio sweep"},
      {"delay", "minimum delay against distance"},
      {"split-compare", "direct against split routing"},
      {"percolation", "potential-graph crossing sweep"},
      {"formulas", "closed-form values as JSON"}};
  for (const auto& [name, help] : subcommands) app.add_subcommand(name, help);

  CLI11_PARSE(app, argc, argv);

  try {
    scg::ExperimentSpec spec;
    spec.kind = scg::parse_kind(app.get_subcommands().front()->get_name());
    if (!flags["preset"].empty()) scg::apply_preset(spec, flags["preset"]);
    if (!config_path.empty())
      for (const auto& [k, v] : scg::read_config_file(config_path)) scg::apply_setting(spec, k, v);
    for (const std::string& key : scg::config_keys())
      if (key != "preset" && app.count("--" + key) > 0) scg::apply_setting(spec, key, flags[key]);
    for (const std::string& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw scg::InvalidSpec("--set expects key=value, got '" + kv + "'");
      scg::apply_setting(spec, kv.substr(0, eq), kv.substr(eq + 1));
    }
    const nlohmann::json summary = scg::run(spec);
    const std::string text = summary.dump(2) + "\n";
    if (spec.kind != scg::ExperimentKind::formulas)
      scg::write_text_atomic(spec.output_path / "summary.json", text);
    std::cout << text;
  } catch (const scg::Error& e) {
    std::cerr << "scg-lab: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
