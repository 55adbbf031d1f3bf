#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "atomrec/solvers.hpp"
#include "atomrec/types.hpp"

namespace atomrec {

struct PhaseConfig {
  std::string set_id;
  SetParams params;
  std::vector<int> n_grid;  // strictly increasing, each in [1, p]
  int trials = 50;
  std::uint64_t master_seed = 0;
  SolverConfig solver;
  double success_threshold = 1e-3;  // relative-error cutoff for "exact" recovery
};

struct PhaseRow {
  int n = 0;
  int trials = 0;
  int successes = 0;
  double success_rate = 0.0;
  double mean_rel_error = 0.0;
  double mean_seconds = 0.0;
};

struct PhaseResult {
  PhaseConfig config;
  std::vector<PhaseRow> rows;
};

struct TrialOutcome {
  bool success = false;
  double rel_error = 0.0;
  double seconds = 0.0;
};

// One recovery trial: synthesize a truth model, draw Phi with variance 1/n,
// solve the noiseless program, threshold the relative error. Solver
// non-convergence is recorded as a failure, never raised.
TrialOutcome run_trial(const std::string& set_id, const SetParams& params, int n,
                       RngStream& rng, const SolverConfig& solver,
                       double success_threshold);

// Success-rate grid over measurement counts; trial (i_n, i_t) draws from
// stream index i_n * trials + i_t, so the result is deterministic in the
// master seed regardless of execution schedule.
PhaseResult run_phase(const PhaseConfig& config);

struct RelaxationComparison {
  PhaseResult p1;  // elliptope relaxation
  PhaseResult p2;  // symmetric-hypercube relaxation
  // The exact cut-polytope curve has no tractable description and is not run.
  std::string exact_polytope_note;
};

// Cut-matrix recovery under both relaxations with shared instances: trial
// (n, i) uses the same truth and measurement map for both curves.
RelaxationComparison run_relaxation_comparison(int m, const std::vector<int>& n_grid,
                                               int trials, std::uint64_t seed,
                                               const SolverConfig& solver,
                                               double success_threshold = 1e-3);

// Linear interpolation of the first 50%-success crossing; NaN if the curve
// never crosses within the grid.
double crossing_location(const PhaseResult& result, double level = 0.5);

int thread_budget();  // ATOMIC_THREADS (0 or unset = hardware concurrency)

}  // namespace atomrec
