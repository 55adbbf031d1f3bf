#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "atomrec/errors.hpp"
#include "atomrec/solvers.hpp"

namespace atomrec {

namespace {

// Projection onto {x : Phi x = y} through a cached factorization of
// Phi Phi^T; the lifted scale coordinate passes through untouched.
class DataProjection {
 public:
  DataProjection(const LinearMap& map, const Vec& y) : map_(map), y_(y) {
    using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Eigen::Map<const RowMat> phi(map.matrix.data.data(), map.n(), map.p());
    Eigen::MatrixXd gram = phi * phi.transpose();
    // Tiny ridge keeps the factorization usable for degenerate maps.
    gram.diagonal().array() += 1e-13 * std::max(1.0, gram.trace() / map.n());
    solver_.compute(gram);
    if (solver_.info() != Eigen::Success)
      throw NumericalError("gauge splitting: factorization of Phi Phi^T failed");
  }

  void operator()(Vec& xt) const {
    const int p = map_.p();
    Vec x(xt.begin(), xt.begin() + p);
    Vec image = map_.apply(x);
    Eigen::VectorXd rhs(map_.n());
    for (int i = 0; i < map_.n(); ++i) rhs(i) = image[i] - y_[i];
    const Eigen::VectorXd mult = solver_.solve(rhs);
    Vec correction = map_.apply_adjoint(Vec(mult.data(), mult.data() + mult.size()));
    for (int i = 0; i < p; ++i) xt[i] -= correction[i];
  }

 private:
  const LinearMap& map_;
  const Vec& y_;
  Eigen::LDLT<Eigen::MatrixXd> solver_;
};

}  // namespace

SolveReport solve_gauge_splitting(const Problem& problem,
                                  const AtomicSetOracle& oracle,
                                  const SolverConfig& config) {
  if (!oracle.gauge_description)
    throw CapabilityError("solve_gauge_splitting: set '" + oracle.set_id +
                          "' carries no membership description");
  const int p = problem.map.p();
  if (oracle.gauge_description->ambient != p)
    throw ShapeError("solve_gauge_splitting: description/map dimension mismatch");
  const std::size_t dim = static_cast<std::size_t>(p) + 1;

  std::vector<std::function<void(Vec&)>> projections;
  DataProjection data(problem.map, problem.y);
  projections.emplace_back([&data](Vec& xt) { data(xt); });
  for (const auto& block : oracle.gauge_description->blocks)
    projections.push_back(block.project);
  const std::size_t n_blocks = projections.size();

  // Consensus start: least-norm data fit with unit scale.
  Vec z(dim, 0.0);
  z[dim - 1] = 1.0;
  data(z);
  std::vector<Vec> copies(n_blocks, z);
  std::vector<Vec> duals(n_blocks, Vec(dim, 0.0));

  double rho = config.rho > 0.0 ? config.rho : 1.0;
  const double sqrt_dim = std::sqrt(static_cast<double>(dim));
  double primal_res = std::numeric_limits<double>::infinity();
  double dual_res = primal_res;
  double primal_res_quarter_ago = primal_res;
  long iter = 0;
  bool converged = false;

  Vec z_prev(dim), work(dim);
  for (; iter < config.splitting_max_iter; ++iter) {
    for (std::size_t b = 0; b < n_blocks; ++b) {
      work = z;
      for (std::size_t i = 0; i < dim; ++i) work[i] -= duals[b][i];
      projections[b](work);
      copies[b] = work;
    }
    z_prev = z;
    std::fill(z.begin(), z.end(), 0.0);
    for (std::size_t b = 0; b < n_blocks; ++b)
      for (std::size_t i = 0; i < dim; ++i) z[i] += copies[b][i] + duals[b][i];
    const double inv = 1.0 / static_cast<double>(n_blocks);
    for (auto& v : z) v *= inv;
    // The linear objective "minimize t" lands entirely in the consensus step.
    z[dim - 1] -= 1.0 / (rho * static_cast<double>(n_blocks));

    double r_sq = 0.0;
    for (std::size_t b = 0; b < n_blocks; ++b) {
      double block_sq = 0.0;
      for (std::size_t i = 0; i < dim; ++i) {
        const double d = copies[b][i] - z[i];
        duals[b][i] += d;
        block_sq += d * d;
      }
      r_sq += block_sq;
    }
    primal_res = std::sqrt(r_sq);
    double dz_sq = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      const double d = z[i] - z_prev[i];
      dz_sq += d * d;
    }
    dual_res = rho * std::sqrt(static_cast<double>(n_blocks) * dz_sq);

    double scale = norm2(z);
    for (const auto& c : copies) scale = std::max(scale, norm2(c));
    const double eps_pri = sqrt_dim * config.tol_feas + config.tol_feas * scale;
    double dual_scale = 0.0;
    for (const auto& d : duals) dual_scale = std::max(dual_scale, norm2(d));
    const double eps_dual =
        sqrt_dim * config.tol_feas + config.tol_feas * rho * dual_scale;
    if (primal_res <= eps_pri && dual_res <= eps_dual) {
      converged = true;
      ++iter;
      break;
    }

    if ((iter + 1) % 25 == 0) {
      if (primal_res > 10.0 * dual_res && rho < 1e4) {
        rho *= 2.0;
        for (auto& d : duals)
          for (auto& v : d) v *= 0.5;
      } else if (dual_res > 10.0 * primal_res && rho > 1e-4) {
        rho *= 0.5;
        for (auto& d : duals)
          for (auto& v : d) v *= 2.0;
      }
      if ((iter + 1) % (std::max(config.splitting_max_iter, 4) / 4) == 0)
        primal_res_quarter_ago = primal_res;
    }
  }

  SolveReport report;
  report.x_hat.assign(z.begin(), z.begin() + p);
  report.gauge = z[dim - 1];
  report.objective = report.gauge;
  report.iterations = iter;
  const Vec image = problem.map.apply(report.x_hat);
  report.residual = norm2(image - problem.y);
  if (converged) {
    report.status = SolveStatus::converged;
  } else {
    // A primal residual that is large and has stopped improving indicates an
    // empty intersection of the data constraint with the cone.
    const double stalled = primal_res_quarter_ago > 0.0
                               ? primal_res / primal_res_quarter_ago
                               : 0.0;
    const double magnitude = primal_res / (1.0 + norm2(problem.y));
    report.status = (magnitude > 1e-3 && stalled > 0.9)
                        ? SolveStatus::infeasible
                        : SolveStatus::max_iter;
  }
  return report;
}

}  // namespace atomrec
