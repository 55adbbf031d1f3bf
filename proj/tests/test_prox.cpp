#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>

#include <cmath>
#include <functional>

#include "atomrec/errors.hpp"
#include "atomrec/prox.hpp"
#include "atomrec/rng.hpp"
#include "atomrec/types.hpp"
#include "oracles/least_distance_qp.hpp"

using namespace atomrec;

namespace {

Vec random_vec(int n, RngStream& rng, double scale = 1.0) {
  Vec v(n);
  for (auto& e : v) e = scale * rng.next_gaussian();
  return v;
}

// Independent l1-ball projection: bisection on the shrink threshold.
Vec l1_ball_oracle(const Vec& x, double radius) {
  if (norm1(x) <= radius) return x;
  double lo = 0.0, hi = norm_inf(x);
  for (int it = 0; it < 200; ++it) {
    const double tau = 0.5 * (lo + hi);
    double mass = 0.0;
    for (double v : x) mass += std::max(std::abs(v) - tau, 0.0);
    (mass > radius ? lo : hi) = tau;
  }
  const double tau = 0.5 * (lo + hi);
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = std::copysign(std::max(std::abs(x[i]) - tau, 0.0), x[i]);
  return out;
}

}  // namespace

TEST_CASE("soft threshold piecewise formula") {
  CHECK(soft_threshold({2.0, -0.3, -2.0}, 0.5) == Vec{1.5, 0.0, -1.5});
  const Vec x = {0.7, -1.1, 0.0};
  CHECK(soft_threshold(x, 0.0) == x);
  CHECK(soft_threshold({0.4}, 0.5) == Vec{0.0});
  CHECK_THROWS_AS(soft_threshold(x, -0.1), ArgumentError);
}

TEST_CASE("l1 ball projection matches the threshold-search oracle") {
  CHECK(project_l1_ball({3.0, 1.0}, 2.0) == Vec{2.0, 0.0});
  const Vec inside = {0.3, -0.4, 0.1};
  CHECK(project_l1_ball(inside, 2.0) == inside);
  CHECK(project_l1_ball({5.0, -2.0}, 0.0) == Vec{0.0, 0.0});

  RngStream rng(21, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const Vec x = random_vec(8, rng, 2.0);
    const double radius = 0.1 + 2.0 * rng.next_double();
    const Vec got = project_l1_ball(x, radius);
    const Vec expected = l1_ball_oracle(x, radius);
    for (std::size_t i = 0; i < x.size(); ++i)
      CHECK(got[i] == doctest::Approx(expected[i]).epsilon(1e-9));
  }
}

TEST_CASE("nonnegative l1 ball projection") {
  const Vec projected = project_nonneg_l1_ball({5.0, 1.0}, 2.0);
  CHECK(projected[0] == doctest::Approx(2.0));
  CHECK(projected[1] == doctest::Approx(0.0));
}

TEST_CASE("psd projection clamps the spectrum") {
  Mat diag(2, 2, {1.0, 0.0, 0.0, -2.0});
  const Mat projected = project_psd(diag);
  CHECK(projected(0, 0) == doctest::Approx(1.0));
  CHECK(projected(1, 1) == doctest::Approx(0.0).epsilon(1e-12));

  RngStream rng(5, 0);
  Mat random(3, 3, random_vec(9, rng));
  Mat spd(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      spd(i, j) = 0.0;
      for (int k = 0; k < 3; ++k) spd(i, j) += random(i, k) * random(j, k);
    }
  const Mat fixed = project_psd(spd);
  for (std::size_t i = 0; i < spd.size(); ++i)
    CHECK(fixed.data[i] == doctest::Approx(spd.data[i]).epsilon(1e-9));

  Mat neg(2, 2, {-1.0, 0.0, 0.0, -1.0});
  for (double v : project_psd(neg).data)
    CHECK(v == doctest::Approx(0.0));

  double delta = 0.0;
  Mat skewed(2, 2, {1.0, 1.0, 0.0, 1.0});
  project_psd(skewed, &delta);
  CHECK(delta > 1e-8);
}

TEST_CASE("projection onto equal row/column sums") {
  Mat half(2, 2, {0.5, 0.5, 0.5, 0.5});
  const Mat fixed = project_doubly_stochastic_affine(half, 1.0);
  for (std::size_t i = 0; i < half.size(); ++i)
    CHECK(fixed.data[i] == doctest::Approx(half.data[i]));

  // Least-squares oracle on the 4-variable system: zero matrix goes to 1/2.
  const Mat from_zero = project_doubly_stochastic_affine(Mat(2, 2), 1.0);
  for (double v : from_zero.data) CHECK(v == doctest::Approx(0.5));

  RngStream rng(3, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 2 + trial % 4;
    Mat x(m, m, random_vec(m * m, rng, 2.0));
    const double t = rng.next_gaussian();
    const Mat result = project_doubly_stochastic_affine(x, t);
    for (int i = 0; i < m; ++i) {
      double row = 0.0, col = 0.0;
      for (int j = 0; j < m; ++j) {
        row += result(i, j);
        col += result(j, i);
      }
      CHECK(row == doctest::Approx(t).epsilon(1e-10));
      CHECK(col == doctest::Approx(t).epsilon(1e-10));
    }
  }
}

namespace {

std::vector<Projection> birkhoff_blocks(int m, double t) {
  std::vector<Projection> blocks;
  blocks.push_back([](Vec& v) {
    for (auto& e : v) e = std::max(e, 0.0);
  });
  blocks.push_back([m, t](Vec& v) {
    Mat x(m, m, v);
    v = project_doubly_stochastic_affine(x, t).data;
  });
  return blocks;
}

}  // namespace

TEST_CASE("dykstra degenerate and fixed-point cases") {
  // Single block: one pass lands on that block's projection.
  std::vector<Projection> single{[](Vec& v) {
    for (auto& e : v) e = std::max(e, 0.0);
  }};
  const DykstraResult r = dykstra(single, {-1.0, 2.0});
  CHECK(r.converged);
  CHECK(r.point == Vec{0.0, 2.0});

  // A doubly stochastic matrix is already in the intersection.
  Vec ds = {0.2, 0.3, 0.5, 0.5, 0.4, 0.1, 0.3, 0.3, 0.4};
  const DykstraResult fixed = dykstra(birkhoff_blocks(3, 1.0), ds);
  CHECK(fixed.converged);
  for (std::size_t i = 0; i < ds.size(); ++i)
    CHECK(fixed.point[i] == doctest::Approx(ds[i]).epsilon(1e-9));
}

TEST_CASE("dykstra matches the active-set QP oracle on Birkhoff projections") {
  RngStream rng(17, 0);
  for (int m = 2; m <= 4; ++m) {
    for (int trial = 0; trial < 50; ++trial) {
      Mat x(m, m, random_vec(m * m, rng, 1.5));
      const DykstraResult got = dykstra(birkhoff_blocks(m, 1.0), x.data);
      REQUIRE(got.converged);
      const Mat expected = testing::project_birkhoff_qp(x, 1.0);
      for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(std::abs(got.point[i] - expected.data[i]) <= 1e-6);
    }
  }
}

TEST_CASE("dykstra reports non-convergence with residuals") {
  std::vector<Projection> blocks{[](Vec& v) { v[0] = 0.0; },
                                 [](Vec& v) { v[0] = 1.0; }};
  const DykstraResult r = dykstra(blocks, {0.5}, 1e-9, 50);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 50);
  CHECK(r.residuals.size() == 2);
  CHECK(r.residuals[0] + r.residuals[1] > 0.1);
}

TEST_CASE("moreau pair: l1 decomposition and identities") {
  // Dual ball of the l1 atomic norm is the linf ball: a coordinate clamp.
  auto clamp_ball = [](double mu) {
    return Projection([mu](Vec& v) {
      for (auto& e : v) e = std::clamp(e, -mu, mu);
    });
  };
  const auto [pi, lambda] = moreau_pair({2.0, -0.3}, 0.5, clamp_ball(0.5));
  CHECK(pi[0] == doctest::Approx(1.5));
  CHECK(pi[1] == doctest::Approx(0.0));
  CHECK(lambda[0] == doctest::Approx(0.5));
  CHECK(lambda[1] == doctest::Approx(-0.3));

  // Inside the dual ball the prox collapses to zero.
  const auto [pi0, lambda0] = moreau_pair({0.1, -0.2}, 0.5, clamp_ball(0.5));
  CHECK(norm2(pi0) == doctest::Approx(0.0));
  CHECK(lambda0 == Vec{0.1, -0.2});

  RngStream rng(33, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const Vec x = random_vec(6, rng, 2.0);
    const double mu = 0.1 + rng.next_double();
    const auto [p, l] = moreau_pair(x, mu, clamp_ball(mu));
    for (std::size_t i = 0; i < x.size(); ++i)
      CHECK(std::abs(p[i] + l[i] - x[i]) <= 1e-12);
    // Complementary slackness <Pi, Lambda> = mu ||Pi||_A with the l1 gauge.
    CHECK(dot(p, l) == doctest::Approx(mu * norm1(p)).epsilon(1e-8));

    // And the linf-side pair through the l1-ball projection.
    const Projection ball = [mu](Vec& v) { v = project_l1_ball(v, mu); };
    const auto [pinf, linf_part] = moreau_pair(x, mu, ball);
    for (std::size_t i = 0; i < x.size(); ++i)
      CHECK(std::abs(pinf[i] + linf_part[i] - x[i]) <= 1e-12);
    CHECK(dot(pinf, linf_part) ==
          doctest::Approx(mu * norm_inf(pinf)).epsilon(1e-8));
  }
}

TEST_CASE("projections are idempotent and nonexpansive") {
  RngStream rng(55, 2);
  std::vector<std::function<Vec(const Vec&)>> projections;
  projections.push_back([](const Vec& x) { return project_l1_ball(x, 1.3); });
  projections.push_back([](const Vec& x) { return project_psd(Mat(3, 3, x)).data; });
  projections.push_back([](const Vec& x) {
    return project_doubly_stochastic_affine(Mat(3, 3, x), 1.0).data;
  });
  projections.push_back([](const Vec& x) {
    Vec v = x;
    joint_sym_offdiag_box_project(v, 2);  // expects 5 entries
    return v;
  });
  const std::vector<int> dims = {9, 9, 9, 5};
  for (std::size_t pi = 0; pi < projections.size(); ++pi) {
    for (int trial = 0; trial < 100; ++trial) {
      const Vec x = random_vec(dims[pi], rng, 2.0);
      const Vec z = random_vec(dims[pi], rng, 2.0);
      const Vec px = projections[pi](x);
      const Vec pz = projections[pi](z);
      CHECK(norm2(projections[pi](px) - px) <= 1e-10);
      CHECK(norm2(px - pz) <= norm2(x - z) + 1e-12);
    }
  }
}

namespace {

// Dense KKT oracle for joint affine projections: minimize
// ||xt - xt0||^2 subject to the homogeneous rows of `constraints`.
Vec joint_affine_oracle(const Vec& xt0, const Mat& constraints) {
  const int dim = static_cast<int>(xt0.size());
  const int rows = constraints.rows;
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(dim + rows, dim + rows);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim + rows);
  for (int i = 0; i < dim; ++i) {
    kkt(i, i) = 1.0;
    rhs(i) = xt0[i];
  }
  for (int r = 0; r < rows; ++r)
    for (int j = 0; j < dim; ++j) {
      kkt(dim + r, j) = constraints(r, j);
      kkt(j, dim + r) = constraints(r, j);
    }
  const Eigen::VectorXd sol = kkt.completeOrthogonalDecomposition().solve(rhs);
  return Vec(sol.data(), sol.data() + dim);
}

}  // namespace

TEST_CASE("joint row/col-sum projection matches a dense KKT oracle") {
  RngStream rng(70, 0);
  const int m = 3;
  Mat constraints(2 * m, m * m + 1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) constraints(i, i * m + j) = 1.0;
    constraints(i, m * m) = -1.0;
  }
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) constraints(m + j, i * m + j) = 1.0;
    constraints(m + j, m * m) = -1.0;
  }
  for (int trial = 0; trial < 30; ++trial) {
    Vec xt = random_vec(m * m + 1, rng, 2.0);
    const Vec expected = joint_affine_oracle(xt, constraints);
    joint_ds_affine_project(xt, m);
    for (std::size_t i = 0; i < xt.size(); ++i)
      CHECK(xt[i] == doctest::Approx(expected[i]).epsilon(1e-9));
  }
}

TEST_CASE("joint diagonal projection matches a dense KKT oracle") {
  RngStream rng(71, 0);
  const int m = 3;
  Mat constraints(m, m * m + 1);
  for (int i = 0; i < m; ++i) {
    constraints(i, i * (m + 1)) = 1.0;
    constraints(i, m * m) = -1.0;
  }
  for (int trial = 0; trial < 30; ++trial) {
    Vec xt = random_vec(m * m + 1, rng, 2.0);
    const Vec expected = joint_affine_oracle(xt, constraints);
    joint_unit_diag_project(xt, m);
    for (std::size_t i = 0; i < xt.size(); ++i)
      CHECK(xt[i] == doctest::Approx(expected[i]).epsilon(1e-9));
  }
}

TEST_CASE("joint off-diagonal box projection against a fine grid") {
  // m = 2: one symmetric pair s and the scale t; grid the 2-D problem.
  RngStream rng(72, 0);
  for (int trial = 0; trial < 20; ++trial) {
    Vec xt = random_vec(5, rng, 1.5);
    Vec projected = xt;
    joint_sym_offdiag_box_project(projected, 2);
    const double s0 = 0.5 * (xt[1] + xt[2]);
    auto objective = [&](double s, double t) {
      return 2.0 * (s - s0) * (s - s0) + (t - xt[4]) * (t - xt[4]);
    };
    double best = 1e300, best_s = 0.0, best_t = 0.0;
    for (int ti = 0; ti <= 400; ++ti) {
      const double t = ti * 0.01;
      for (int si = -400; si <= 400; ++si) {
        const double s = si * 0.01;
        if (std::abs(s) > t) continue;
        const double val = objective(s, t);
        if (val < best) {
          best = val;
          best_s = s;
          best_t = t;
        }
      }
    }
    CHECK(projected[1] == doctest::Approx(best_s).epsilon(0.02));
    CHECK(projected[1] == projected[2]);
    CHECK(projected[4] == doctest::Approx(best_t).epsilon(0.02));
    CHECK(objective(projected[1], projected[4]) <= best + 1e-3);
  }
}
