#pragma once

#include <string>
#include <vector>

#include "atomrec/sets.hpp"
#include "atomrec/types.hpp"

namespace atomrec {

enum class SolveStatus { converged, max_iter, infeasible };

std::string to_string(SolveStatus status);

struct SolverConfig {
  // 0 means backtracking from a power-iteration estimate of 1/||Phi||^2.
  double step = 0.0;
  // Iteration cap per proximal-gradient stage / total for the splitting solver.
  int max_iter = 2000;
  int splitting_max_iter = 25000;
  // Converged when the relative objective decrease over a 10-iteration window
  // drops below tol_obj.
  double tol_obj = 1e-10;
  // Feasibility target ||Phi x - y|| <= tol_feas (1 + ||y||); also the
  // splitting solver's residual tolerance.
  double tol_feas = 1e-7;
  bool acceleration = true;
  // Continuation weights; empty means the geometric schedule
  // lambda_j = lambda_0 2^-j with lambda_0 = ||Phi^T y||*_A.
  std::vector<double> lambda_schedule;
  double lambda_floor = 1e-8;
  // Splitting penalty; adapted by residual balancing during the run.
  double rho = 1.0;
  // When set, prox_gradient appends the objective after every iteration.
  std::vector<double>* objective_trace = nullptr;
};

struct SolveReport {
  Vec x_hat;
  double objective = 0.0;
  double residual = 0.0;   // ||Phi x_hat - y||
  double gauge = 0.0;      // ||x_hat||_A when computable, NaN otherwise
  long iterations = 0;
  SolveStatus status = SolveStatus::max_iter;
  // Candidate for the dual program max y^T z s.t. ||Phi^T z||* <= 1,
  // recovered from the final regularized stage (prox path only).
  Vec dual_certificate;
  double lambda_final = 0.0;
};

// min ||Phi x - y||^2 + lambda ||x||_A by accelerated proximal gradient with
// backtracking line search and function-value restart.
SolveReport prox_gradient(const Problem& problem, const AtomicSetOracle& oracle,
                          double lambda, const SolverConfig& config,
                          const Vec* warm_start = nullptr);

// min ||x||_A s.t. Phi x = y. Prox-capable sets run decreasing-lambda
// continuation with warm starts; membership-described sets delegate to
// solve_gauge_splitting.
SolveReport solve_noiseless(const Problem& problem, const AtomicSetOracle& oracle,
                            const SolverConfig& config);

// min t s.t. Phi x = y, (x, t) in the lifted membership cone, by consensus
// operator splitting across the data constraint and the description blocks.
SolveReport solve_gauge_splitting(const Problem& problem,
                                  const AtomicSetOracle& oracle,
                                  const SolverConfig& config);

// min ||x||_A s.t. ||y - Phi x|| <= delta, by bisection on lambda in the
// regularized form until the residual lands in [0.95 delta, 1.05 delta].
SolveReport solve_noisy(const Problem& problem, const AtomicSetOracle& oracle,
                        const SolverConfig& config);

// Convenience overloads that build the oracle from the problem fields.
SolveReport solve_noiseless(const Problem& problem, const SolverConfig& config);
SolveReport solve_noisy(const Problem& problem, const SolverConfig& config);

}  // namespace atomrec
