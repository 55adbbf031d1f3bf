#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "atomrec/errors.hpp"
#include "atomrec/kernels.hpp"
#include "atomrec/solvers.hpp"

namespace atomrec {

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_iter: return "max-iter";
    case SolveStatus::infeasible: return "infeasible";
  }
  return "unknown";
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct LeastSquaresTerm {
  const LinearMap& map;
  const Vec& y;
  mutable Vec image;  // scratch: Phi x, then Phi x - y

  double value(const Vec& x) const {
    map.apply_into(x, image);
    double v = 0.0;
    for (std::size_t i = 0; i < image.size(); ++i) {
      const double d = image[i] - y[i];
      v += d * d;
    }
    return v;
  }

  // f(x) and grad f(x) = 2 Phi^T (Phi x - y) with a single forward apply.
  double value_and_gradient(const Vec& x, Vec& out) const {
    map.apply_into(x, image);
    const auto& ops = kernels::active();
    ops.axpy(-1.0, y.data(), image.data(), image.size());
    const double v = ops.nrm2sq(image.data(), image.size());
    map.apply_adjoint_into(image, out);
    ops.scal(2.0, out.data(), out.size());
    return v;
  }
};

}  // namespace

SolveReport prox_gradient(const Problem& problem, const AtomicSetOracle& oracle,
                          double lambda, const SolverConfig& config,
                          const Vec* warm_start) {
  if (!oracle.has_prox())
    throw CapabilityError("prox_gradient: set '" + oracle.set_id +
                          "' exposes no proximity operator");
  if (!(lambda > 0.0)) throw ArgumentError("prox_gradient: lambda must be > 0");
  const int p = problem.map.p();
  const auto& ops = kernels::active();
  LeastSquaresTerm f{problem.map, problem.y, {}};

  double alpha = config.step;
  if (alpha <= 0.0) {
    const double lip = problem.map.op_norm_sq_estimate(50);
    alpha = lip > 0.0 ? 1.0 / lip : 1.0;
  }

  Vec x = warm_start ? *warm_start : Vec(p, 0.0);
  Vec momentum = x;
  Vec grad(p), trial(p), step_point(p);
  double theta = 1.0;
  double fx = f.value(x);
  double objective = fx + lambda * oracle.gauge(x);
  std::deque<double> window{objective};

  SolveReport report;
  report.lambda_final = lambda;
  long iter = 0;
  for (; iter < config.max_iter; ++iter) {
    const Vec& anchor = config.acceleration ? momentum : x;
    const double f_anchor = f.value_and_gradient(anchor, grad);

    double fz = 0.0;
    while (true) {
      step_point = anchor;
      ops.axpy(-alpha, grad.data(), step_point.data(), step_point.size());
      trial = oracle.prox(step_point, alpha * lambda);
      fz = f.value(trial);
      double quad = f_anchor;
      double gap_sq = 0.0;
      for (int i = 0; i < p; ++i) {
        const double d = trial[i] - anchor[i];
        quad += grad[i] * d;
        gap_sq += d * d;
      }
      quad += gap_sq / (2.0 * alpha);
      if (fz <= quad + 1e-12 * (1.0 + std::abs(quad))) break;
      alpha *= 0.5;
      if (alpha < 1e-18) throw NumericalError("prox_gradient: line search collapsed");
    }

    const double next_objective = fz + lambda * oracle.gauge(trial);
    if (!std::isfinite(next_objective))
      throw NumericalError("prox_gradient: objective is not finite");

    if (config.acceleration) {
      if (next_objective > objective) {
        // Function-value restart: drop momentum, retake the step from x.
        momentum = x;
        theta = 1.0;
        fx = f.value(x);
        objective = fx + lambda * oracle.gauge(x);
        window.clear();
        window.push_back(objective);
        continue;
      }
      const double theta_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta));
      const double mix = (theta - 1.0) / theta_next;
      momentum = trial;
      for (int i = 0; i < p; ++i) momentum[i] += mix * (trial[i] - x[i]);
      theta = theta_next;
    }
    x = trial;
    fx = fz;
    objective = next_objective;
    if (config.objective_trace) config.objective_trace->push_back(objective);

    window.push_back(objective);
    if (window.size() > 11) window.pop_front();
    if (window.size() == 11) {
      const double drop = window.front() - window.back();
      if (drop <= config.tol_obj * std::max(1.0, std::abs(window.back()))) {
        report.status = SolveStatus::converged;
        ++iter;
        break;
      }
    }
  }

  report.x_hat = std::move(x);
  report.iterations = iter;
  report.objective = objective;
  f.map.apply_into(report.x_hat, f.image);
  ops.axpy(-1.0, problem.y.data(), f.image.data(), f.image.size());
  report.residual = norm2(f.image);
  report.gauge = oracle.gauge ? oracle.gauge(report.x_hat) : kNaN;
  // Multiplier estimate z = 2 (y - Phi x) / lambda for the dual program.
  report.dual_certificate.assign(f.image.size(), 0.0);
  for (std::size_t i = 0; i < f.image.size(); ++i)
    report.dual_certificate[i] = -2.0 * f.image[i] / lambda;
  return report;
}

SolveReport solve_noiseless(const Problem& problem, const AtomicSetOracle& oracle,
                            const SolverConfig& config) {
  if (problem.delta.has_value())
    throw ArgumentError("solve_noiseless: problem carries a noise bound");
  if (!oracle.has_prox()) {
    if (oracle.gauge_description) return solve_gauge_splitting(problem, oracle, config);
    throw CapabilityError("solve_noiseless: set '" + oracle.set_id +
                          "' has neither prox nor membership description");
  }

  const double y_norm = norm2(problem.y);
  const double feas_target = config.tol_feas * (1.0 + y_norm);
  SolveReport report;
  if (y_norm == 0.0) {
    report.x_hat.assign(problem.map.p(), 0.0);
    report.status = SolveStatus::converged;
    report.gauge = 0.0;
    report.lambda_final = config.lambda_floor;
    return report;
  }

  std::vector<double> schedule = config.lambda_schedule;
  if (schedule.empty()) {
    const double lambda0 = oracle.dual_norm(problem.map.apply_adjoint(problem.y));
    double lambda = std::max(lambda0, config.lambda_floor);
    for (int j = 0; j < 64 && lambda >= config.lambda_floor; ++j, lambda *= 0.5)
      schedule.push_back(lambda);
  } else {
    for (std::size_t i = 1; i < schedule.size(); ++i)
      if (!(schedule[i] < schedule[i - 1]))
        throw ArgumentError("solve_noiseless: lambda schedule must be strictly decreasing");
  }

  SolverConfig stage_config = config;
  if (stage_config.step <= 0.0) {
    const double lip = problem.map.op_norm_sq_estimate(50);
    stage_config.step = lip > 0.0 ? 1.0 / lip : 1.0;
  }
  Vec warm(problem.map.p(), 0.0);
  long total_iterations = 0;
  bool feasible = false;
  for (double lambda : schedule) {
    report = prox_gradient(problem, oracle, lambda, stage_config, &warm);
    total_iterations += report.iterations;
    warm = report.x_hat;
    if (report.residual <= feas_target) {
      feasible = true;
      break;
    }
  }
  if (feasible) {
    // Certificate polish at the final level: the multiplier estimate
    // 2(y - Phi x)/lambda needs the stage solved well beyond feasibility.
    SolverConfig polish = stage_config;
    polish.tol_obj = std::min(config.tol_obj, 1e-14);
    polish.max_iter = 4 * config.max_iter;
    SolveReport polished =
        prox_gradient(problem, oracle, report.lambda_final, polish, &warm);
    total_iterations += polished.iterations;
    if (polished.residual <= report.residual ||
        polished.residual <= feas_target)
      report = std::move(polished);
  }
  report.iterations = total_iterations;
  report.objective = report.gauge;
  report.status = feasible && report.residual <= feas_target
                      ? SolveStatus::converged
                      : SolveStatus::max_iter;
  return report;
}

SolveReport solve_noisy(const Problem& problem, const AtomicSetOracle& oracle,
                        const SolverConfig& config) {
  if (!problem.delta.has_value() || !(*problem.delta > 0.0))
    throw ArgumentError("solve_noisy: problem needs delta > 0");
  if (!oracle.has_prox())
    throw CapabilityError("solve_noisy: set '" + oracle.set_id +
                          "' exposes no proximity operator");
  const double delta = *problem.delta;
  const double y_norm = norm2(problem.y);

  SolveReport report;
  if (delta >= y_norm) {
    // x = 0 is feasible and gauge-minimal.
    report.x_hat.assign(problem.map.p(), 0.0);
    report.status = SolveStatus::converged;
    report.residual = y_norm;
    report.gauge = 0.0;
    report.objective = 0.0;
    return report;
  }

  SolverConfig stage_config = config;
  if (stage_config.step <= 0.0) {
    const double lip = problem.map.op_norm_sq_estimate(50);
    stage_config.step = lip > 0.0 ? 1.0 / lip : 1.0;
  }
  Vec warm(problem.map.p(), 0.0);
  long total_iterations = 0;

  auto residual_at = [&](double lambda) {
    SolveReport r = prox_gradient(problem, oracle, lambda, stage_config, &warm);
    total_iterations += r.iterations;
    warm = r.x_hat;
    report = std::move(r);
    return report.residual;
  };

  auto in_band = [&](double res) {
    return res >= 0.95 * delta && res <= 1.05 * delta;
  };
  auto finish_converged = [&]() {
    report.status = SolveStatus::converged;
    report.iterations = total_iterations;
    report.objective = report.gauge;
    return report;
  };

  // Warm-started geometric descent from the zero-solution level brackets the
  // target residual, then log-bisection refines inside the bracket.
  double lambda_hi =
      2.0 * oracle.dual_norm(problem.map.apply_adjoint(problem.y)) + 1.0;
  double lambda = lambda_hi;
  double res = residual_at(lambda);
  if (in_band(res)) return finish_converged();
  int halvings = 0;
  while (res > 1.05 * delta && halvings < 80) {
    lambda_hi = lambda;
    lambda *= 0.5;
    ++halvings;
    res = residual_at(lambda);
    if (in_band(res)) return finish_converged();
  }
  double lambda_lo = lambda;  // residual here is below the band
  for (int it = 0; it < 60 && lambda_hi / lambda_lo > 1.0 + 1e-12; ++it) {
    const double mid = std::sqrt(lambda_lo * lambda_hi);
    res = residual_at(mid);
    if (in_band(res)) return finish_converged();
    (res > delta ? lambda_hi : lambda_lo) = mid;
  }
  report.status = SolveStatus::max_iter;
  report.iterations = total_iterations;
  report.objective = report.gauge;
  // Bracket endpoint for the non-convergence report.
  report.lambda_final = lambda_hi;
  return report;
}

SolveReport solve_noiseless(const Problem& problem, const SolverConfig& config) {
  return solve_noiseless(problem, make_oracle(problem.set_id, problem.params), config);
}

SolveReport solve_noisy(const Problem& problem, const SolverConfig& config) {
  return solve_noisy(problem, make_oracle(problem.set_id, problem.params), config);
}

}  // namespace atomrec
