#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"

namespace {

using relloc::cli::ExperimentConfig;

struct SubcommandState {
  CLI::App* app = nullptr;
  std::string config_path;
  // Flag assignments in command-line order; routed through the same
  // key = value applier as the config file, and applied after it so flags
  // override the file.
  std::vector<std::pair<std::string, std::string>> overrides;
};

void wire_flags(SubcommandState& state) {
  CLI::App* sub = state.app;
  sub->add_option("--config", state.config_path, "Config file (key = value lines)");
  const auto add_kv = [&state, sub](const std::string& flag,
                                    const std::string& key,
                                    const std::string& desc) {
    sub->add_option_function<std::string>(
        flag,
        [&state, key](const std::string& value) {
          state.overrides.emplace_back(key, value);
        },
        desc);
  };
  add_kv("--graph-family", "graph.family",
         "cycle|path|complete|torus|erdos_renyi|file");
  add_kv("--graph-n", "graph.n", "Node count (cycle/path/complete/erdos_renyi)");
  add_kv("--graph-rows", "graph.rows", "Torus rows");
  add_kv("--graph-cols", "graph.cols", "Torus columns");
  add_kv("--graph-p", "graph.p", "Edge probability (erdos_renyi)");
  add_kv("--graph-path", "graph.path", "Edge-list file (family 'file')");
  add_kv("--graph-seed", "graph.seed", "Graph sampling seed (erdos_renyi)");
  add_kv("--sigma", "sigma", "Measurement noise standard deviation");
  add_kv("--nu", "nu", "Prior standard deviation");
  add_kv("--tau", "tau", "Step size (default: 1/(max_degree + gamma))");
  add_kv("--baseline-tau", "baseline_tau", "Baseline step size override");
  add_kv("--epsilon", "epsilon", "Stopping tolerance");
  add_kv("--horizon", "horizon", "Iteration count T");
  add_kv("--trials", "trials", "Monte Carlo trials");
  add_kv("--seed", "seed", "Experiment seed");
  add_kv("--out", "out", "Output directory");
  add_kv("--overlays", "overlays", "Per-trial curves kept in the CSV (max 20)");
  add_kv("--sweep-families", "sweep.families", "Comma list of graph families");
  add_kv("--sweep-sizes", "sweep.sizes", "Comma list of node counts");
  add_kv("--sweep-epsilons", "sweep.epsilons", "Comma list of tolerances");
}

ExperimentConfig build_config(const SubcommandState& state) {
  ExperimentConfig cfg;
  if (!state.config_path.empty())
    relloc::cli::load_config_file(cfg, state.config_path);
  for (const auto& [key, value] : state.overrides)
    relloc::cli::apply_key_value(cfg, key, value);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regularized relative localization on graphs: closed-form "
               "analysis and Monte Carlo simulation"};
  app.require_subcommand(1);

  SubcommandState analyze, simulate, compare, sweep;
  analyze.app = app.add_subcommand(
      "analyze", "Closed-form error curve, stopping time and bounds");
  simulate.app = app.add_subcommand(
      "simulate", "Monte Carlo error curve with closed-form overlay");
  compare.app = app.add_subcommand(
      "compare", "Regularized vs baseline on shared realizations");
  sweep.app = app.add_subcommand(
      "sweep", "Stopping time vs bound across families, sizes, tolerances");
  for (auto* state : {&analyze, &simulate, &compare, &sweep})
    wire_flags(*state);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  using relloc::cli::run_command;
  if (analyze.app->parsed())
    return run_command([&] { relloc::cli::cmd_analyze(build_config(analyze)); });
  if (simulate.app->parsed())
    return run_command(
        [&] { relloc::cli::cmd_simulate(build_config(simulate)); });
  if (compare.app->parsed())
    return run_command([&] { relloc::cli::cmd_compare(build_config(compare)); });
  return run_command([&] { relloc::cli::cmd_sweep(build_config(sweep)); });
}
