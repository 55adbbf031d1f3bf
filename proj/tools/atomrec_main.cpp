#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "atomrec/errors.hpp"
#include "atomrec/experiments.hpp"
#include "atomrec/geometry.hpp"
#include "atomrec/io.hpp"
#include "atomrec/sets.hpp"
#include "atomrec/solvers.hpp"

namespace {

using namespace atomrec;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoConvergence = 2;

std::vector<int> parse_grid(const std::string& spec) {
  int lo = 0, hi = 0, step = 0;
  if (std::sscanf(spec.c_str(), "%d:%d:%d", &lo, &hi, &step) != 3 || step < 1 ||
      hi < lo)
    throw ArgumentError("--n-grid expects lo:hi:step with step >= 1 and hi >= lo");
  std::vector<int> grid;
  for (int n = lo; n <= hi; n += step) grid.push_back(n);
  return grid;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw IoError("cannot write output file: " + out_path);
  out << text << "\n";
}

struct SetFlags {
  std::string set;
  SetParams params;

  void attach(CLI::App* cmd) {
    cmd->add_option("--set", set, "atomic set id")->required();
    cmd->add_option("--s", params.s, "sparsity");
    cmd->add_option("--r", params.r, "rank");
    cmd->add_option("--m", params.m, "square matrix side / vertex count");
    cmd->add_option("--m1", params.m1, "matrix rows");
    cmd->add_option("--m2", params.m2, "matrix cols");
    cmd->add_option("--p", params.p, "ambient dimension");
    cmd->add_option("--k", params.k, "face dimension / subspace dimension");
  }
};

int cmd_solve(const std::string& problem_path, std::optional<double> lambda,
              std::optional<double> delta, const std::string& out_path) {
  Problem problem = read_problem_json(problem_path);
  if (delta) problem.delta = *delta;
  const AtomicSetOracle oracle = make_oracle(problem.set_id, problem.params);
  SolveReport report;
  SolverConfig config;
  if (problem.delta) {
    report = solve_noisy(problem, oracle, config);
  } else if (lambda) {
    report = prox_gradient(problem, oracle, *lambda, config);
  } else if (oracle.has_prox()) {
    report = solve_noiseless(problem, oracle, config);
  } else {
    report = solve_gauge_splitting(problem, oracle, config);
  }
  emit(solve_report_to_json(report), out_path);
  return report.status == SolveStatus::converged ? kExitOk : kExitNoConvergence;
}

int cmd_width(const SetFlags& flags, long samples, std::uint64_t seed,
              const std::string& out_path) {
  const std::string id = canonical_set_id(flags.set);
  WidthEstimate estimate;
  if (id == "subspace") {
    const int p = flags.params.p;
    const int k = flags.params.k;
    if (p < 1 || k < 1 || k > p)
      throw ArgumentError("width --set subspace needs 1 <= k <= p");
    estimate = mc_width(
        [k](const Vec& g) {
          double s = 0.0;
          for (int i = 0; i < k; ++i) s += g[i] * g[i];
          return std::sqrt(s);
        },
        p, samples, seed, 0, "exact-oracle");
  } else if (id == "l1" || id == "nuclear" || id == "linf") {
    const AtomicSetOracle oracle = make_oracle(id, flags.params);
    RngStream model_rng(seed, 0);
    const AtomicModel model = synthesize_model(id, flags.params, model_rng);
    const std::string kind = id == "nuclear" ? "upper-bound" : "exact-oracle";
    estimate = mc_width(
        [&](const Vec& g) { return oracle.normal_cone_distance(model, g); },
        oracle.ambient_dim, samples, seed, 0, kind);
  } else {
    throw ArgumentError(
        "width: no distance oracle for set '" + flags.set +
        "'; supported sets: l1, nuclear, linf, subspace");
  }
  emit(width_estimate_to_json(estimate), out_path);
  return kExitOk;
}

int cmd_bound(const SetFlags& flags, std::optional<double> epsilon,
              const std::string& out_path) {
  const std::string id = canonical_set_id(flags.set);
  const double width_sq = bound_catalog(id, flags.params);
  const MeasurementBudget budget =
      measurement_budget(std::sqrt(width_sq), epsilon.value_or(0.0));
  std::string json = "{\n  \"width_sq_bound\": " + format_double(width_sq) +
                     ",\n  \"n_exact\": " + std::to_string(budget.n_exact);
  if (epsilon) json += ",\n  \"n_robust\": " + std::to_string(budget.n_robust);
  std::optional<long> terracini;
  if (id == "l1")
    terracini = terracini_lower_bound(0, flags.params.s, flags.params.p);
  else if (id == "nuclear") {
    const int m1 = flags.params.m1 > 0 ? flags.params.m1 : flags.params.m;
    const int m2 = flags.params.m2 > 0 ? flags.params.m2 : flags.params.m;
    terracini = terracini_lower_bound(m1 + m2 - 2, flags.params.r,
                                      static_cast<long>(m1) * m2);
  } else if (id == "spectral") {
    const long m = flags.params.m;
    terracini = terracini_lower_bound(m * (m - 1) / 2, 1, m * m);
  }
  if (terracini) json += ",\n  \"terracini_lower\": " + std::to_string(*terracini);
  json += "\n}";
  emit(json, out_path);
  return kExitOk;
}

int cmd_phase(const SetFlags& flags, const std::string& grid_spec, int trials,
              std::uint64_t seed, const std::string& out_path, double threshold) {
  const std::vector<int> grid = parse_grid(grid_spec);
  SolverConfig solver;
  if (canonical_set_id(flags.set) == "cut-compare" || flags.set == "cut-compare") {
    const RelaxationComparison comparison = run_relaxation_comparison(
        flags.params.m, grid, trials, seed, solver, threshold);
    std::string stem = out_path;
    if (stem.size() > 4 && stem.substr(stem.size() - 4) == ".csv")
      stem = stem.substr(0, stem.size() - 4);
    write_phase_csv(stem + "_p1.csv", comparison.p1);
    write_phase_sidecar(stem + "_p1.json", comparison.p1,
                        comparison.exact_polytope_note);
    write_phase_csv(stem + "_p2.csv", comparison.p2);
    write_phase_sidecar(stem + "_p2.json", comparison.p2,
                        comparison.exact_polytope_note);
    return kExitOk;
  }
  PhaseConfig config;
  config.set_id = canonical_set_id(flags.set);
  config.params = flags.params;
  config.n_grid = grid;
  config.trials = trials;
  config.master_seed = seed;
  config.solver = solver;
  config.success_threshold = threshold;
  // Validate grid bounds against the ambient dimension up front.
  RngStream probe(seed, 0);
  const AtomicModel model = synthesize_model(config.set_id, config.params, probe);
  const int p = static_cast<int>(model.ambient.size());
  if (grid.front() < 1 || grid.back() > p)
    throw ArgumentError("phase: n grid must lie within [1, " + std::to_string(p) + "]");
  const PhaseResult result = run_phase(config);
  std::string stem = out_path;
  if (stem.size() > 4 && stem.substr(stem.size() - 4) == ".csv")
    stem = stem.substr(0, stem.size() - 4);
  write_phase_csv(out_path, result);
  write_phase_sidecar(stem + ".json", result);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"atomic-norm recovery: solvers, width estimates, measurement "
               "budgets, and phase-transition experiments"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "solve a recovery problem from JSON");
  std::string problem_path, solve_out;
  double lambda_flag = -1.0, delta_flag = -1.0;
  solve->add_option("--problem", problem_path, "problem JSON file")->required();
  solve->add_option("--lambda", lambda_flag, "fixed regularization weight");
  solve->add_option("--delta", delta_flag, "noise bound (overrides the file)");
  solve->add_option("--out", solve_out, "write the report here instead of stdout");

  auto* width = app.add_subcommand("width", "Monte-Carlo Gaussian width estimate");
  SetFlags width_flags;
  width_flags.attach(width);
  long samples = 2000;
  std::uint64_t width_seed = 0;
  std::string width_out;
  width->add_option("--samples", samples, "Monte-Carlo sample count");
  width->add_option("--seed", width_seed, "master seed");
  width->add_option("--out", width_out, "output file (default stdout)");

  auto* bound = app.add_subcommand("bound", "closed-form measurement budgets");
  SetFlags bound_flags;
  bound_flags.attach(bound);
  double epsilon_flag = -1.0;
  std::string bound_out;
  bound->add_option("--epsilon", epsilon_flag, "robust-recovery epsilon in [0,1)");
  bound->add_option("--out", bound_out, "output file (default stdout)");

  auto* phase = app.add_subcommand("phase", "phase-transition experiment, CSV output");
  SetFlags phase_flags;
  phase_flags.attach(phase);
  std::string grid_spec, phase_out;
  int trials = 50;
  std::uint64_t phase_seed = 0;
  double threshold = 1e-3;
  phase->add_option("--n-grid", grid_spec, "inclusive grid lo:hi:step")->required();
  phase->add_option("--trials", trials, "trials per grid point");
  phase->add_option("--seed", phase_seed, "master seed");
  phase->add_option("--out", phase_out, "CSV output path")->required();
  phase->add_option("--threshold", threshold, "relative-error success cutoff");

  try {
    app.parse(argc, argv);
    if (solve->parsed()) {
      std::optional<double> lambda, delta;
      if (solve->count("--lambda")) lambda = lambda_flag;
      if (solve->count("--delta")) delta = delta_flag;
      return cmd_solve(problem_path, lambda, delta, solve_out);
    }
    if (width->parsed()) return cmd_width(width_flags, samples, width_seed, width_out);
    if (bound->parsed()) {
      std::optional<double> epsilon;
      if (bound->count("--epsilon")) epsilon = epsilon_flag;
      return cmd_bound(bound_flags, epsilon, bound_out);
    }
    if (phase->parsed())
      return cmd_phase(phase_flags, grid_spec, trials, phase_seed, phase_out,
                       threshold);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
