#include "config.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "relloc/rng.hpp"

namespace relloc::cli {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> items;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': not a number: '" + value + "'");
  }
}

long parse_long(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long v = std::stol(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': not an integer: '" + value + "'");
  }
}

std::uint64_t parse_seed(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': not a seed value: '" + value + "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  const long v = parse_long(key, value);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    throw ConfigError("key '" + key + "': out of range: '" + value + "'");
  return static_cast<int>(v);
}

}  // namespace

std::string family_name(GraphFamily family) {
  switch (family) {
    case GraphFamily::kCycle: return "cycle";
    case GraphFamily::kPath: return "path";
    case GraphFamily::kComplete: return "complete";
    case GraphFamily::kTorus: return "torus";
    case GraphFamily::kErdosRenyi: return "erdos_renyi";
    case GraphFamily::kFile: return "file";
  }
  return "?";
}

GraphFamily parse_family(const std::string& name) {
  if (name == "cycle") return GraphFamily::kCycle;
  if (name == "path") return GraphFamily::kPath;
  if (name == "complete") return GraphFamily::kComplete;
  if (name == "torus") return GraphFamily::kTorus;
  if (name == "erdos_renyi") return GraphFamily::kErdosRenyi;
  if (name == "file") return GraphFamily::kFile;
  throw ConfigError("unknown graph family '" + name +
                    "' (expected cycle|path|complete|torus|erdos_renyi|file)");
}

void apply_key_value(ExperimentConfig& cfg, const std::string& raw_key,
                     const std::string& raw_value) {
  const std::string key = trim(raw_key);
  const std::string value = trim(raw_value);
  if (key.empty()) throw ConfigError("empty key");

  if (key == "graph.family") {
    cfg.graph.family = parse_family(value);
  } else if (key == "graph.n") {
    cfg.graph.n = parse_int(key, value);
  } else if (key == "graph.rows") {
    cfg.graph.rows = parse_int(key, value);
  } else if (key == "graph.cols") {
    cfg.graph.cols = parse_int(key, value);
  } else if (key == "graph.p") {
    cfg.graph.p = parse_double(key, value);
  } else if (key == "graph.path") {
    cfg.graph.path = value;
  } else if (key == "graph.seed") {
    cfg.graph.seed = parse_seed(key, value);
  } else if (key == "sigma") {
    cfg.sigma = parse_double(key, value);
  } else if (key == "nu") {
    cfg.nu = parse_double(key, value);
  } else if (key == "tau") {
    cfg.tau = parse_double(key, value);
  } else if (key == "baseline_tau") {
    cfg.baseline_tau = parse_double(key, value);
  } else if (key == "epsilon") {
    cfg.epsilon = parse_double(key, value);
  } else if (key == "horizon") {
    cfg.horizon = parse_long(key, value);
  } else if (key == "trials") {
    cfg.trials = parse_long(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_seed(key, value);
  } else if (key == "out") {
    cfg.out_dir = value;
  } else if (key == "overlays") {
    cfg.overlays = parse_int(key, value);
  } else if (key == "sweep.families") {
    cfg.sweep.families.clear();
    for (const auto& item : split_list(value))
      cfg.sweep.families.push_back(parse_family(item));
  } else if (key == "sweep.sizes") {
    cfg.sweep.sizes.clear();
    for (const auto& item : split_list(value))
      cfg.sweep.sizes.push_back(parse_int(key, item));
  } else if (key == "sweep.epsilons") {
    cfg.sweep.epsilons.clear();
    for (const auto& item : split_list(value))
      cfg.sweep.epsilons.push_back(parse_double(key, item));
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

void load_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected 'key = value'");
    try {
      apply_key_value(cfg, line.substr(0, eq), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void validate_scalars(const ExperimentConfig& cfg) {
  if (!(cfg.sigma > 0.0)) throw ConfigError("sigma must be positive");
  if (!(cfg.nu > 0.0)) throw ConfigError("nu must be positive");
  if (cfg.tau && !(*cfg.tau > 0.0)) throw ConfigError("tau must be positive");
  if (cfg.baseline_tau && !(*cfg.baseline_tau > 0.0))
    throw ConfigError("baseline_tau must be positive");
  if (!(cfg.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (cfg.horizon < 0) throw ConfigError("horizon must be nonnegative");
  if (cfg.trials < 0) throw ConfigError("trials must be nonnegative");
  if (cfg.overlays < -1 || cfg.overlays > 20)
    throw ConfigError("overlays must be between 0 and 20");
  if (cfg.out_dir.empty())
    throw ConfigError("output directory missing (set --out or 'out' key)");
}

void validate(const ExperimentConfig& cfg) {
  validate_scalars(cfg);

  const GraphConfig& g = cfg.graph;
  switch (g.family) {
    case GraphFamily::kCycle:
      if (g.n < 3) throw ConfigError("graph.n must be >= 3 for a cycle");
      break;
    case GraphFamily::kPath:
    case GraphFamily::kComplete:
      if (g.n < 2) throw ConfigError("graph.n must be >= 2");
      break;
    case GraphFamily::kTorus:
      if (g.rows < 2 || g.cols < 2)
        throw ConfigError("graph.rows and graph.cols must be >= 2");
      break;
    case GraphFamily::kErdosRenyi:
      if (g.n < 2) throw ConfigError("graph.n must be >= 2");
      if (!(g.p > 0.0) || g.p > 1.0)
        throw ConfigError("graph.p must be in (0, 1]");
      break;
    case GraphFamily::kFile:
      if (g.path.empty()) throw ConfigError("graph.path missing");
      break;
  }
}

Graph build_graph(const ExperimentConfig& cfg) {
  const GraphConfig& g = cfg.graph;
  switch (g.family) {
    case GraphFamily::kCycle: return build_cycle(g.n);
    case GraphFamily::kPath: return build_path(g.n);
    case GraphFamily::kComplete: return build_complete(g.n);
    case GraphFamily::kTorus: return build_torus_grid(g.rows, g.cols);
    case GraphFamily::kErdosRenyi:
      return build_erdos_renyi(
          g.n, g.p, g.seed.value_or(rng::mix(cfg.seed, 0x6ea9)));
    case GraphFamily::kFile: return read_edge_list_file(g.path);
  }
  throw ConfigError("unreachable graph family");
}

std::string graph_description(const ExperimentConfig& cfg) {
  const GraphConfig& g = cfg.graph;
  switch (g.family) {
    case GraphFamily::kCycle:
    case GraphFamily::kPath:
    case GraphFamily::kComplete:
      return family_name(g.family) + " n=" + std::to_string(g.n);
    case GraphFamily::kTorus:
      return "torus " + std::to_string(g.rows) + "x" + std::to_string(g.cols);
    case GraphFamily::kErdosRenyi:
      return "erdos_renyi n=" + std::to_string(g.n) +
             " p=" + std::to_string(g.p);
    case GraphFamily::kFile: return "file " + g.path;
  }
  return "?";
}

int threads_from_env() {
  const char* raw = std::getenv("RELLOC_THREADS");
  if (raw == nullptr || *raw == '\0') return 0;
  try {
    std::size_t used = 0;
    const int v = std::stoi(raw, &used);
    if (used == std::string(raw).size() && v > 0) return v;
  } catch (const std::exception&) {
  }
  std::cerr << "warning: ignoring invalid RELLOC_THREADS value '" << raw
            << "'\n";
  return 0;
}

}  // namespace relloc::cli
