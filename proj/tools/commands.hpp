#pragma once

#include <functional>

#include "config.hpp"

namespace relloc::cli {

// Each command resolves the configuration, runs, and writes its outputs under
// cfg.out_dir. Failures are reported by exception; run_command maps them to
// process exit codes.

// theory.csv (t, H_t, H_inf, threshold) and summary.txt with the resolved
// constants, the exact stopping time and both bounds.
void cmd_analyze(const ExperimentConfig& cfg);

// empirical.csv: closed-form column plus Monte Carlo mean/stderr and optional
// per-trial overlay columns. With trials = 0, theory columns only (warns).
void cmd_simulate(const ExperimentConfig& cfg);

// compare.csv with paired regularized/baseline curves on shared realizations,
// and summary.txt locating the baseline's empirical minimum.
void cmd_compare(const ExperimentConfig& cfg);

// sweep.csv: one row per (family, size, epsilon) with H_inf, the exact
// stopping time and both bounds.
void cmd_sweep(const ExperimentConfig& cfg);

// Exit codes: 0 success, 2 configuration error (bad keys, bad values,
// infeasible graph or step size), 3 numerical failure, 1 anything else.
int run_command(const std::function<void()>& body);

}  // namespace relloc::cli
