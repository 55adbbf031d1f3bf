#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "atomrec/errors.hpp"
#include "atomrec/experiments.hpp"
#include "atomrec/sets.hpp"

namespace atomrec {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Instance {
  AtomicModel truth;
  Problem problem;
};

Instance draw_instance(const std::string& set_id, const SetParams& params, int n,
                       RngStream& rng) {
  Instance inst;
  inst.truth = synthesize_model(set_id, params, rng);
  const int p = static_cast<int>(inst.truth.ambient.size());
  if (n < 1 || n > p)
    throw ArgumentError("run_trial: need 1 <= n <= p (n=" + std::to_string(n) +
                        ", p=" + std::to_string(p) + ")");
  inst.problem.map = sample_gaussian_map(n, p, 1.0 / n, rng);
  inst.problem.y = inst.problem.map.apply(inst.truth.ambient);
  inst.problem.set_id = canonical_set_id(set_id);
  inst.problem.params = params;
  return inst;
}

TrialOutcome score(const SolveReport& report, const AtomicModel& truth,
                   double threshold, double seconds) {
  TrialOutcome out;
  out.seconds = seconds;
  const double truth_norm = norm2(truth.ambient);
  out.rel_error = truth_norm > 0.0 ? norm2(report.x_hat - truth.ambient) / truth_norm
                                   : norm2(report.x_hat);
  if (!std::isfinite(out.rel_error)) out.rel_error = std::numeric_limits<double>::max();
  out.success =
      report.status == SolveStatus::converged && out.rel_error <= threshold;
  return out;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  int threads = thread_budget();
  threads = std::max(1, std::min<int>(threads, static_cast<int>(count)));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = static_cast<std::size_t>(t); i < count;
           i += static_cast<std::size_t>(threads))
        body(i);
    });
  for (auto& th : pool) th.join();
}

PhaseRow aggregate(int n, const std::vector<TrialOutcome>& outcomes) {
  PhaseRow row;
  row.n = n;
  row.trials = static_cast<int>(outcomes.size());
  double err = 0.0, secs = 0.0;
  for (const auto& o : outcomes) {
    row.successes += o.success ? 1 : 0;
    err += o.rel_error;
    secs += o.seconds;
  }
  row.success_rate = static_cast<double>(row.successes) / row.trials;
  row.mean_rel_error = err / row.trials;
  row.mean_seconds = secs / row.trials;
  return row;
}

}  // namespace

int thread_budget() {
  const char* env = std::getenv("ATOMIC_THREADS");
  if (env) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

TrialOutcome run_trial(const std::string& set_id, const SetParams& params, int n,
                       RngStream& rng, const SolverConfig& solver,
                       double success_threshold) {
  const Instance inst = draw_instance(set_id, params, n, rng);
  const AtomicSetOracle oracle = make_oracle(inst.problem.set_id, params);
  const auto start = Clock::now();
  SolveReport report;
  try {
    report = oracle.has_prox() ? solve_noiseless(inst.problem, oracle, solver)
                               : solve_gauge_splitting(inst.problem, oracle, solver);
  } catch (const NumericalError&) {
    TrialOutcome out;
    out.success = false;
    out.rel_error = std::numeric_limits<double>::max();
    out.seconds = seconds_since(start);
    return out;
  }
  return score(report, inst.truth, success_threshold, seconds_since(start));
}

PhaseResult run_phase(const PhaseConfig& config) {
  if (config.trials < 1) throw ArgumentError("run_phase: trials must be >= 1");
  for (std::size_t i = 1; i < config.n_grid.size(); ++i)
    if (config.n_grid[i] <= config.n_grid[i - 1])
      throw ArgumentError("run_phase: n grid must be strictly increasing");

  PhaseResult result;
  result.config = config;
  const std::size_t trials = static_cast<std::size_t>(config.trials);
  for (std::size_t ni = 0; ni < config.n_grid.size(); ++ni) {
    const int n = config.n_grid[ni];
    std::vector<TrialOutcome> outcomes(trials);
    const auto start = Clock::now();
    parallel_for(trials, [&](std::size_t ti) {
      RngStream rng(config.master_seed, ni * trials + ti);
      outcomes[ti] = run_trial(config.set_id, config.params, n, rng,
                               config.solver, config.success_threshold);
    });
    result.rows.push_back(aggregate(n, outcomes));
    std::fprintf(stderr, "phase %s n=%d: %d/%d successes (%.1fs)\n",
                 config.set_id.c_str(), n, result.rows.back().successes,
                 config.trials, seconds_since(start));
  }
  return result;
}

RelaxationComparison run_relaxation_comparison(int m, const std::vector<int>& n_grid,
                                               int trials, std::uint64_t seed,
                                               const SolverConfig& solver,
                                               double success_threshold) {
  if (m < 3) throw ArgumentError("run_relaxation_comparison: m must be >= 3");
  SetParams params;
  params.m = m;
  PhaseConfig base;
  base.params = params;
  base.n_grid = n_grid;
  base.trials = trials;
  base.master_seed = seed;
  base.solver = solver;
  base.success_threshold = success_threshold;

  RelaxationComparison comparison;
  comparison.p1.config = base;
  comparison.p1.config.set_id = "cut-p1";
  comparison.p2.config = base;
  comparison.p2.config.set_id = "cut-p2";
  comparison.exact_polytope_note =
      "exact cut-polytope curve omitted: the polytope has no tractable description";

  const AtomicSetOracle p1 = oracle_elliptope(m);
  const AtomicSetOracle p2 = oracle_hypercube_sym(m);
  const std::size_t trial_count = static_cast<std::size_t>(trials);
  for (std::size_t ni = 0; ni < n_grid.size(); ++ni) {
    const int n = n_grid[ni];
    std::vector<TrialOutcome> out1(trial_count), out2(trial_count);
    const auto start = Clock::now();
    parallel_for(trial_count, [&](std::size_t ti) {
      RngStream rng(seed, ni * trial_count + ti);
      // Shared-instance discipline: one truth and one map for both curves.
      const Instance inst = draw_instance("cut-p1", params, n, rng);
      for (auto [oracle, slot] : {std::pair{&p1, &out1}, std::pair{&p2, &out2}}) {
        const auto t0 = Clock::now();
        SolveReport report;
        try {
          report = solve_gauge_splitting(inst.problem, *oracle, solver);
          (*slot)[ti] = score(report, inst.truth, success_threshold, seconds_since(t0));
        } catch (const NumericalError&) {
          (*slot)[ti].success = false;
          (*slot)[ti].rel_error = std::numeric_limits<double>::max();
          (*slot)[ti].seconds = seconds_since(t0);
        }
      }
    });
    comparison.p1.rows.push_back(aggregate(n, out1));
    comparison.p2.rows.push_back(aggregate(n, out2));
    std::fprintf(stderr, "cut-compare n=%d: p1 %d/%d, p2 %d/%d (%.1fs)\n", n,
                 comparison.p1.rows.back().successes, trials,
                 comparison.p2.rows.back().successes, trials, seconds_since(start));
  }
  return comparison;
}

double crossing_location(const PhaseResult& result, double level) {
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    if (result.rows[i].success_rate >= level) {
      if (i == 0) return result.rows[0].n;
      const auto& lo = result.rows[i - 1];
      const auto& hi = result.rows[i];
      const double span = hi.success_rate - lo.success_rate;
      if (span <= 0.0) return hi.n;
      return lo.n + (level - lo.success_rate) / span * (hi.n - lo.n);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace atomrec
