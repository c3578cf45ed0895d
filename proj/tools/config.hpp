#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "relloc/graph.hpp"

namespace relloc::cli {

// Configuration problem: unknown key, unparsable value, constraint violation.
// Mapped to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class GraphFamily { kCycle, kPath, kComplete, kTorus, kErdosRenyi, kFile };

std::string family_name(GraphFamily family);
GraphFamily parse_family(const std::string& name);

struct GraphConfig {
  GraphFamily family = GraphFamily::kCycle;
  int n = 0;         // cycle / path / complete / erdos_renyi
  int rows = 0;      // torus
  int cols = 0;      // torus
  double p = 0.0;    // erdos_renyi
  std::string path;  // file
  // erdos_renyi; when absent the graph seed is derived from the experiment
  // seed, so the same config reproduces the same graph.
  std::optional<std::uint64_t> seed;
};

struct SweepSpec {
  std::vector<GraphFamily> families;
  std::vector<int> sizes;
  std::vector<double> epsilons;
};

struct ExperimentConfig {
  GraphConfig graph;
  double sigma = 1.0;
  double nu = 1.0;
  std::optional<double> tau;           // default: 1/(max_degree + gamma)
  std::optional<double> baseline_tau;  // compare only
  double epsilon = 0.01;
  long horizon = 1000;
  long trials = 0;
  std::uint64_t seed = 0;
  std::string out_dir;
  int overlays = -1;  // per-trial curves in the CSV; -1: command default
  SweepSpec sweep;
};

// Applies one `key = value` assignment (dotted keys for the graph and sweep
// sections). Unknown keys and malformed values throw ConfigError naming the
// key.
void apply_key_value(ExperimentConfig& cfg, const std::string& key,
                     const std::string& value);

// Flat text config: `key = value` lines, blank lines and '#' comments ignored.
void load_config_file(ExperimentConfig& cfg, const std::string& path);

// Numeric constraints shared by every command. Throws ConfigError.
// validate_scalars skips the graph section (sweeps build their own graphs).
void validate_scalars(const ExperimentConfig& cfg);
void validate(const ExperimentConfig& cfg);

Graph build_graph(const ExperimentConfig& cfg);
std::string graph_description(const ExperimentConfig& cfg);

// RELLOC_THREADS environment variable; 0 (use hardware concurrency) when
// unset. Malformed values warn and are ignored.
int threads_from_env();

}  // namespace relloc::cli
