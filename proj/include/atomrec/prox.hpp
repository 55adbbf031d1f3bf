#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "atomrec/types.hpp"

namespace atomrec {

// Entrywise shrink: x_i + mu if x_i < -mu, 0 if |x_i| <= mu, x_i - mu else.
Vec soft_threshold(const Vec& x, double mu);

// Euclidean projection onto {z : ||z||_1 <= radius}, exact sort-and-threshold.
Vec project_l1_ball(const Vec& x, double radius);

// Projection of a sorted-or-not nonnegative spectrum onto
// {s >= 0, sum s_i <= radius}; helper shared by the spectral/nuclear oracles.
Vec project_nonneg_l1_ball(const Vec& s, double radius);

// Nearest symmetric positive-semidefinite matrix. The input is symmetrized
// first; if symmetrization_delta is non-null it receives ||X - X^T||_F / 2 so
// callers can detect misuse (delta > 1e-8 signals an asymmetric input).
Mat project_psd(const Mat& x, double* symmetrization_delta = nullptr);

// Closed-form projection onto {X : every row sum = t, every column sum = t}.
Mat project_doubly_stochastic_affine(const Mat& x, double t);

using Projection = std::function<void(Vec&)>;

struct DykstraResult {
  Vec point;
  bool converged = false;
  int iterations = 0;
  // Per-block distance ||P_b(x) - x|| at the returned point.
  std::vector<double> residuals;
};

// Dykstra's alternating projection scheme with correction variables;
// converges to the Euclidean projection onto the intersection of the blocks.
// Non-convergence is a report, not an error.
DykstraResult dykstra(const std::vector<Projection>& blocks, const Vec& x0,
                      double tol = 1e-9, int max_iter = 10000);

// Moreau decomposition x = Pi + Lambda: Lambda is the projection of x onto
// the mu-scaled dual-norm ball, Pi the prox of mu ||.||_A at x.
std::pair<Vec, Vec> moreau_pair(const Vec& x, double mu,
                                const Projection& dual_ball_projection);

// Joint projections in (x, t) for membership-described cones.
// The point layout is [x_0 .. x_{p-1}, t].

// {(X, t): row sums = t, col sums = t} for an m x m flattened X.
void joint_ds_affine_project(Vec& xt, int m);

// {(X, t): X_ii = t for all i}.
void joint_unit_diag_project(Vec& xt, int m);

// {(X, t): X = X^T, |X_ij| <= t for i != j, t >= 0}.
void joint_sym_offdiag_box_project(Vec& xt, int m);

// PSD cone on the matrix part; t is untouched.
void joint_psd_project(Vec& xt, int m);

// Nonnegative orthant on the vector part; t is untouched.
void joint_nonneg_project(Vec& xt);

}  // namespace atomrec
