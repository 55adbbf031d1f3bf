#include "atomrec/prox.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "atomrec/errors.hpp"
#include "atomrec/kernels.hpp"

namespace atomrec {

Vec soft_threshold(const Vec& x, double mu) {
  if (mu < 0.0) throw ArgumentError("soft_threshold: mu must be >= 0");
  Vec out(x.size());
  kernels::active().soft_threshold(x.data(), mu, out.data(), x.size());
  return out;
}

namespace {

// Tau with sum_i max(v_i - tau, 0) = radius, assuming sum_i v_i > radius.
double l1_threshold(std::vector<double> v, double radius) {
  std::sort(v.begin(), v.end(), std::greater<double>());
  double cumulative = 0.0;
  std::size_t rho = 0;
  double tau = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    cumulative += v[j];
    const double candidate = (cumulative - radius) / static_cast<double>(j + 1);
    if (v[j] > candidate) {
      rho = j + 1;
      tau = candidate;
    }
  }
  (void)rho;
  return std::max(tau, 0.0);
}

}  // namespace

Vec project_l1_ball(const Vec& x, double radius) {
  if (radius < 0.0) throw ArgumentError("project_l1_ball: radius must be >= 0");
  if (radius == 0.0) return Vec(x.size(), 0.0);
  std::vector<double> mags(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) mags[i] = std::abs(x[i]);
  if (std::accumulate(mags.begin(), mags.end(), 0.0) <= radius) return x;
  const double tau = l1_threshold(std::move(mags), radius);
  Vec out(x.size());
  kernels::active().soft_threshold(x.data(), tau, out.data(), x.size());
  return out;
}

Vec project_nonneg_l1_ball(const Vec& s, double radius) {
  if (radius < 0.0) throw ArgumentError("project_nonneg_l1_ball: radius must be >= 0");
  Vec clipped(s);
  for (auto& v : clipped) v = std::max(v, 0.0);
  double total = std::accumulate(clipped.begin(), clipped.end(), 0.0);
  if (total <= radius) return clipped;
  const double tau = l1_threshold(clipped, radius);
  for (auto& v : clipped) v = std::max(v - tau, 0.0);
  return clipped;
}

Mat project_psd(const Mat& x, double* symmetrization_delta) {
  if (x.rows != x.cols) throw ShapeError("project_psd: matrix must be square");
  const int m = x.rows;
  Eigen::MatrixXd sym(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) sym(i, j) = 0.5 * (x(i, j) + x(j, i));
  if (symmetrization_delta) *symmetrization_delta = asymmetry(x);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  if (eig.info() != Eigen::Success)
    throw NumericalError("project_psd: eigendecomposition failed");
  Eigen::VectorXd vals = eig.eigenvalues().cwiseMax(0.0);
  Eigen::MatrixXd out =
      eig.eigenvectors() * vals.asDiagonal() * eig.eigenvectors().transpose();
  Mat result(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) result(i, j) = out(i, j);
  return result;
}

Mat project_doubly_stochastic_affine(const Mat& x, double t) {
  if (x.rows != x.cols)
    throw ShapeError("project_doubly_stochastic_affine: matrix must be square");
  const int m = x.rows;
  Vec row_sums(m, 0.0), col_sums(m, 0.0);
  double total = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      row_sums[i] += x(i, j);
      col_sums[j] += x(i, j);
      total += x(i, j);
    }
  Mat out(m, m);
  const double md = static_cast<double>(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      out(i, j) = x(i, j) - row_sums[i] / md - col_sums[j] / md +
                  total / (md * md) + t / md;
  return out;
}

DykstraResult dykstra(const std::vector<Projection>& blocks, const Vec& x0,
                      double tol, int max_iter) {
  DykstraResult result;
  result.point = x0;
  result.residuals.assign(blocks.size(), 0.0);
  if (blocks.empty()) {
    result.converged = true;
    return result;
  }
  std::vector<Vec> corrections(blocks.size(), Vec(x0.size(), 0.0));
  Vec before(x0.size());
  for (int iter = 1; iter <= max_iter; ++iter) {
    // Correction drift over one cycle (Birgin-Raydan stopping rule); the
    // iterate can be feasible long before it reaches the projection.
    double drift_sq = 0.0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      before = result.point + corrections[b];
      result.point = before;
      blocks[b](result.point);
      Vec updated = before - result.point;
      drift_sq += norm2sq(updated - corrections[b]);
      corrections[b] = std::move(updated);
    }
    result.iterations = iter;
    if (std::sqrt(drift_sq) <= tol) {
      double worst = 0.0;
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        Vec probe = result.point;
        blocks[b](probe);
        result.residuals[b] = norm2(probe - result.point);
        worst = std::max(worst, result.residuals[b]);
      }
      if (worst <= std::sqrt(tol)) {
        result.converged = true;
        return result;
      }
    }
  }
  double worst = 0.0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    Vec probe = result.point;
    blocks[b](probe);
    result.residuals[b] = norm2(probe - result.point);
    worst = std::max(worst, result.residuals[b]);
  }
  return result;
}

std::pair<Vec, Vec> moreau_pair(const Vec& x, double mu,
                                const Projection& dual_ball_projection) {
  Vec lambda = x;
  dual_ball_projection(lambda);
  (void)mu;
  Vec pi = x - lambda;
  return {std::move(pi), std::move(lambda)};
}

void joint_ds_affine_project(Vec& xt, int m) {
  const std::size_t mm = static_cast<std::size_t>(m) * m;
  if (xt.size() != mm + 1) throw ShapeError("joint_ds_affine_project: bad layout");
  const double t0 = xt[mm];
  Vec row_sums(m, 0.0), col_sums(m, 0.0);
  double total = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const double v = xt[static_cast<std::size_t>(i) * m + j];
      row_sums[i] += v;
      col_sums[j] += v;
      total += v;
    }
  const double md = static_cast<double>(m);
  // dist^2 to the affine slice at level t is quadratic in t; the joint
  // minimizer in (X, t) is t = (total/m + t0) / 2.
  const double t = 0.5 * (total / md + t0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      xt[static_cast<std::size_t>(i) * m + j] += -row_sums[i] / md -
                                                 col_sums[j] / md +
                                                 total / (md * md) + t / md;
  xt[mm] = t;
}

void joint_unit_diag_project(Vec& xt, int m) {
  const std::size_t mm = static_cast<std::size_t>(m) * m;
  if (xt.size() != mm + 1) throw ShapeError("joint_unit_diag_project: bad layout");
  double acc = xt[mm];
  for (int i = 0; i < m; ++i) acc += xt[static_cast<std::size_t>(i) * (m + 1)];
  const double t = acc / static_cast<double>(m + 1);
  for (int i = 0; i < m; ++i) xt[static_cast<std::size_t>(i) * (m + 1)] = t;
  xt[mm] = t;
}

void joint_sym_offdiag_box_project(Vec& xt, int m) {
  const std::size_t mm = static_cast<std::size_t>(m) * m;
  if (xt.size() != mm + 1)
    throw ShapeError("joint_sym_offdiag_box_project: bad layout");
  const double t0 = xt[mm];
  // Symmetric part of each unordered pair; each contributes weight 2.
  std::vector<double> pair_mags;
  pair_mags.reserve(static_cast<std::size_t>(m) * (m - 1) / 2);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      pair_mags.push_back(std::abs(
          0.5 * (xt[static_cast<std::size_t>(i) * m + j] +
                 xt[static_cast<std::size_t>(j) * m + i])));
  // Minimize 2 sum_q max(|s_q| - t, 0)^2 + (t - t0)^2 over t >= 0 by
  // bisection on the monotone derivative.
  double hi = t0;
  for (double v : pair_mags) hi = std::max(hi, v);
  hi = std::max(hi, 0.0) + 1.0;
  double lo = 0.0;
  auto deriv = [&](double t) {
    double d = t - t0;
    for (double v : pair_mags)
      if (v > t) d -= 2.0 * (v - t);
    return d;
  };
  if (deriv(0.0) < 0.0) {
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (deriv(mid) < 0.0 ? lo : hi) = mid;
      if (hi - lo < 1e-15 * (1.0 + hi)) break;
    }
  } else {
    hi = 0.0;
  }
  const double t = 0.5 * (lo + hi);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      double s = 0.5 * (xt[static_cast<std::size_t>(i) * m + j] +
                        xt[static_cast<std::size_t>(j) * m + i]);
      s = std::clamp(s, -t, t);
      xt[static_cast<std::size_t>(i) * m + j] = s;
      xt[static_cast<std::size_t>(j) * m + i] = s;
    }
  xt[mm] = t;
}

void joint_psd_project(Vec& xt, int m) {
  const std::size_t mm = static_cast<std::size_t>(m) * m;
  if (xt.size() != mm + 1) throw ShapeError("joint_psd_project: bad layout");
  Mat x(m, m, Vec(xt.begin(), xt.begin() + mm));
  Mat projected = project_psd(x);
  std::copy(projected.data.begin(), projected.data.end(), xt.begin());
}

void joint_nonneg_project(Vec& xt) {
  if (xt.empty()) return;
  kernels::active().clamp_min0(xt.data(), xt.size() - 1);
}

}  // namespace atomrec
