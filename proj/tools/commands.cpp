#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <utility>

#include "csv.hpp"
#include "relloc/analysis.hpp"
#include "relloc/errors.hpp"
#include "relloc/montecarlo.hpp"
#include "relloc/rng.hpp"
#include "relloc/solver.hpp"

namespace relloc::cli {

namespace {

struct ResolvedExperiment {
  Graph graph;
  double gamma;
  double tau;
  std::string description;
};

ResolvedExperiment resolve(const ExperimentConfig& cfg) {
  validate(cfg);
  Graph g = build_graph(cfg);
  const double gamma = (cfg.sigma * cfg.sigma) / (cfg.nu * cfg.nu);
  const double tau = cfg.tau ? *cfg.tau : default_tau(g, gamma);
  std::string description = graph_description(cfg);
  return {std::move(g), gamma, tau, std::move(description)};
}

// Resolved-configuration comment block. Thread count is deliberately absent:
// outputs must be byte-identical for any RELLOC_THREADS.
std::vector<std::string> config_comments(const std::string& command,
                                         const ExperimentConfig& cfg,
                                         const ResolvedExperiment& r) {
  std::vector<std::string> c;
  c.push_back("relloc " + command);
  c.push_back("graph = " + r.description);
  c.push_back("nodes = " + std::to_string(r.graph.node_count()));
  c.push_back("edges = " + std::to_string(r.graph.edge_count()));
  c.push_back("max_degree = " + std::to_string(r.graph.max_degree()));
  c.push_back("sigma = " + format_double(cfg.sigma));
  c.push_back("nu = " + format_double(cfg.nu));
  c.push_back("gamma = " + format_double(r.gamma));
  c.push_back("tau = " + format_double(r.tau));
  if (cfg.baseline_tau)
    c.push_back("baseline_tau = " + format_double(*cfg.baseline_tau));
  c.push_back("epsilon = " + format_double(cfg.epsilon));
  c.push_back("horizon = " + std::to_string(cfg.horizon));
  c.push_back("trials = " + std::to_string(cfg.trials));
  c.push_back("seed = " + std::to_string(cfg.seed));
  return c;
}

std::string render_csv(const std::vector<std::string>& comments,
                       const std::vector<std::string>& columns,
                       const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (const auto& line : comments) out += "# " + line + "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

std::string render_summary(
    const std::vector<std::pair<std::string, std::string>>& entries) {
  std::string out;
  for (const auto& [key, value] : entries) out += key + " = " + value + "\n";
  return out;
}

std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

int resolve_overlays(const ExperimentConfig& cfg, int command_default) {
  return cfg.overlays < 0 ? command_default : cfg.overlays;
}

}  // namespace

void cmd_analyze(const ExperimentConfig& cfg) {
  const ResolvedExperiment r = resolve(cfg);
  const LaplacianSpectrum s = spectrum(r.graph);
  const IterationSpectrum qs = iteration_spectrum(s, r.tau, r.gamma);
  const MseCurve curve =
      closed_form_mse(qs, r.tau, cfg.sigma, cfg.nu, cfg.horizon);
  const double h_inf = asymptotic_mse(s, cfg.sigma, r.gamma);
  const double a = alpha(r.tau, r.gamma);
  const long t_star =
      stopping_time_exact(qs, r.tau, cfg.sigma, cfg.nu, cfg.epsilon);
  const double intermediate =
      tightest_intermediate_bound(a, r.tau, r.gamma, cfg.epsilon);
  const double universal = stopping_time_bound(a, cfg.epsilon);
  const double threshold = (1.0 + cfg.epsilon) * h_inf;

  std::vector<std::vector<std::string>> rows;
  rows.reserve(curve.values.size());
  for (std::size_t t = 0; t < curve.values.size(); ++t)
    rows.push_back({std::to_string(t), format_double(curve.values[t]),
                    format_double(h_inf), format_double(threshold)});
  atomic_write(out_path(cfg, "theory.csv"),
               render_csv(config_comments("analyze", cfg, r),
                          {"t", "H_t", "H_inf", "threshold"}, rows));

  atomic_write(
      out_path(cfg, "summary.txt"),
      render_summary({{"command", "analyze"},
                      {"graph", r.description},
                      {"nodes", std::to_string(r.graph.node_count())},
                      {"sigma", format_double(cfg.sigma)},
                      {"nu", format_double(cfg.nu)},
                      {"gamma", format_double(r.gamma)},
                      {"tau", format_double(r.tau)},
                      {"alpha", format_double(a)},
                      {"epsilon", format_double(cfg.epsilon)},
                      {"H_inf", format_double(h_inf)},
                      {"t_star_exact", std::to_string(t_star)},
                      {"intermediate_bound", format_double(intermediate)},
                      {"universal_bound", format_double(universal)}}));
}

void cmd_simulate(const ExperimentConfig& cfg) {
  const ResolvedExperiment r = resolve(cfg);
  const LaplacianSpectrum s = spectrum(r.graph);
  const IterationSpectrum qs = iteration_spectrum(s, r.tau, r.gamma);
  const MseCurve curve =
      closed_form_mse(qs, r.tau, cfg.sigma, cfg.nu, cfg.horizon);
  const auto comments = config_comments("simulate", cfg, r);

  if (cfg.trials == 0) {
    std::cerr << "warning: trials = 0, empirical.csv carries theory columns "
                 "only\n";
    std::vector<std::vector<std::string>> rows;
    rows.reserve(curve.values.size());
    for (std::size_t t = 0; t < curve.values.size(); ++t)
      rows.push_back({std::to_string(t), format_double(curve.values[t])});
    atomic_write(out_path(cfg, "empirical.csv"),
                 render_csv(comments, {"t", "H_t"}, rows));
    return;
  }

  const ProblemSpec spec =
      ProblemSpec::with_zero_prior(r.graph, cfg.nu, cfg.sigma);
  const SolverConfig solver_cfg{r.tau, r.gamma, true};
  MonteCarloOptions opts;
  opts.max_threads = threads_from_env();
  opts.retain_samples = resolve_overlays(cfg, 0);
  const EmpiricalCurve ec =
      empirical_mse(spec, solver_cfg, Algorithm::kRegularized, cfg.horizon,
                    cfg.trials, cfg.seed, opts);

  std::vector<std::string> columns{"t", "mean", "stderr", "H_t"};
  for (std::size_t k = 0; k < ec.realization_samples.size(); ++k)
    columns.push_back("real_" + std::to_string(k));
  std::vector<std::vector<std::string>> rows;
  rows.reserve(ec.mean.size());
  for (std::size_t t = 0; t < ec.mean.size(); ++t) {
    std::vector<std::string> row{
        std::to_string(t), format_double(ec.mean[t]),
        format_double(ec.std_error[t]), format_double(curve.values[t])};
    for (const auto& sample : ec.realization_samples)
      row.push_back(format_double(sample[t]));
    rows.push_back(std::move(row));
  }
  atomic_write(out_path(cfg, "empirical.csv"),
               render_csv(comments, columns, rows));
}

void cmd_compare(const ExperimentConfig& cfg) {
  const ResolvedExperiment r = resolve(cfg);
  if (cfg.trials < 1)
    throw ConfigError("compare needs trials >= 1");

  const ProblemSpec spec =
      ProblemSpec::with_zero_prior(r.graph, cfg.nu, cfg.sigma);
  const SolverConfig solver_cfg{r.tau, r.gamma, true};
  MonteCarloOptions opts;
  opts.max_threads = threads_from_env();
  opts.retain_samples = resolve_overlays(cfg, 5);
  opts.baseline_tau = cfg.baseline_tau;
  const ComparisonResult res = compare_algorithms(
      spec, solver_cfg, cfg.horizon, cfg.trials, cfg.seed, opts);

  std::vector<std::string> columns{"t", "mean_regularized",
                                   "stderr_regularized", "mean_baseline",
                                   "stderr_baseline"};
  const std::size_t overlays = res.regularized.realization_samples.size();
  for (std::size_t k = 0; k < overlays; ++k) {
    columns.push_back("reg_real_" + std::to_string(k));
    columns.push_back("base_real_" + std::to_string(k));
  }
  std::vector<std::vector<std::string>> rows;
  rows.reserve(res.regularized.mean.size());
  for (std::size_t t = 0; t < res.regularized.mean.size(); ++t) {
    std::vector<std::string> row{std::to_string(t),
                                 format_double(res.regularized.mean[t]),
                                 format_double(res.regularized.std_error[t]),
                                 format_double(res.baseline.mean[t]),
                                 format_double(res.baseline.std_error[t])};
    for (std::size_t k = 0; k < overlays; ++k) {
      row.push_back(format_double(res.regularized.realization_samples[k][t]));
      row.push_back(format_double(res.baseline.realization_samples[k][t]));
    }
    rows.push_back(std::move(row));
  }
  atomic_write(out_path(cfg, "compare.csv"),
               render_csv(config_comments("compare", cfg, r), columns, rows));

  const auto& base_mean = res.baseline.mean;
  const std::size_t min_at = static_cast<std::size_t>(
      std::min_element(base_mean.begin(), base_mean.end()) -
      base_mean.begin());
  const double a = alpha(r.tau, r.gamma);
  atomic_write(
      out_path(cfg, "summary.txt"),
      render_summary(
          {{"command", "compare"},
           {"graph", r.description},
           {"nodes", std::to_string(r.graph.node_count())},
           {"sigma", format_double(cfg.sigma)},
           {"nu", format_double(cfg.nu)},
           {"gamma", format_double(r.gamma)},
           {"tau", format_double(r.tau)},
           {"baseline_tau", format_double(cfg.baseline_tau.value_or(r.tau))},
           {"alpha", format_double(a)},
           {"epsilon", format_double(cfg.epsilon)},
           {"trials", std::to_string(cfg.trials)},
           {"baseline_min_time", std::to_string(min_at)},
           {"baseline_min_value", format_double(base_mean[min_at])},
           {"baseline_final_value", format_double(base_mean.back())},
           {"regularized_final_value",
            format_double(res.regularized.mean.back())},
           {"universal_bound",
            format_double(stopping_time_bound(a, cfg.epsilon))}}));
}

void cmd_sweep(const ExperimentConfig& cfg) {
  validate_scalars(cfg);
  const SweepSpec& sweep = cfg.sweep;
  if (sweep.families.empty())
    throw ConfigError("sweep.families missing");
  if (sweep.sizes.empty()) throw ConfigError("sweep.sizes missing");
  if (sweep.epsilons.empty()) throw ConfigError("sweep.epsilons missing");
  for (const double eps : sweep.epsilons)
    if (!(eps > 0.0)) throw ConfigError("sweep.epsilons must be positive");

  const double gamma = (cfg.sigma * cfg.sigma) / (cfg.nu * cfg.nu);
  std::vector<std::vector<std::string>> rows;

  for (const GraphFamily family : sweep.families) {
    for (const int n : sweep.sizes) {
      Graph graph = [&]() -> Graph {
        switch (family) {
          case GraphFamily::kCycle: return build_cycle(n);
          case GraphFamily::kPath: return build_path(n);
          case GraphFamily::kComplete: return build_complete(n);
          case GraphFamily::kTorus: {
            const int side = static_cast<int>(std::lround(std::sqrt(n)));
            if (side < 2 || side * side != n)
              throw ConfigError(
                  "sweep torus sizes must be perfect squares >= 4, got " +
                  std::to_string(n));
            return build_torus_grid(side, side);
          }
          case GraphFamily::kErdosRenyi: {
            if (!(cfg.graph.p > 0.0) || cfg.graph.p > 1.0)
              throw ConfigError("graph.p must be in (0, 1] for a sweep over "
                                "erdos_renyi");
            const std::uint64_t base =
                cfg.graph.seed.value_or(rng::mix(cfg.seed, 0x6ea9));
            return build_erdos_renyi(
                n, cfg.graph.p, rng::mix(base, static_cast<std::uint64_t>(n)));
          }
          case GraphFamily::kFile:
            throw ConfigError("sweep does not support graph family 'file'");
        }
        throw ConfigError("unreachable graph family");
      }();

      const double tau = cfg.tau ? *cfg.tau : default_tau(graph, gamma);
      const LaplacianSpectrum s = spectrum(graph);
      const IterationSpectrum qs = iteration_spectrum(s, tau, gamma);
      const double h_inf = asymptotic_mse(s, cfg.sigma, gamma);
      const double a = alpha(tau, gamma);
      for (const double eps : sweep.epsilons) {
        const long t_star =
            stopping_time_exact(qs, tau, cfg.sigma, cfg.nu, eps);
        rows.push_back({std::to_string(n), family_name(family),
                        format_double(eps), format_double(h_inf),
                        std::to_string(t_star),
                        format_double(
                            tightest_intermediate_bound(a, tau, gamma, eps)),
                        format_double(stopping_time_bound(a, eps))});
      }
    }
  }

  std::vector<std::string> comments{"relloc sweep",
                                    "sigma = " + format_double(cfg.sigma),
                                    "nu = " + format_double(cfg.nu),
                                    "gamma = " + format_double(gamma),
                                    "seed = " + std::to_string(cfg.seed)};
  if (cfg.tau) comments.push_back("tau = " + format_double(*cfg.tau));
  atomic_write(out_path(cfg, "sweep.csv"),
               render_csv(comments,
                          {"N", "family", "epsilon", "H_inf", "t_star",
                           "intermediate_bound", "bound"},
                          rows));
}

int run_command(const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const InvalidParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConstructionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "error: numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace relloc::cli
