#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "atomrec/errors.hpp"
#include "atomrec/geometry.hpp"
#include "atomrec/sets.hpp"

using namespace atomrec;

namespace {

double shrink(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

double l1_cone_objective(const Vec& g, const std::vector<int>& support,
                         const std::vector<double>& signs, double t) {
  double value = 0.0;
  std::vector<char> on(g.size(), 0);
  for (std::size_t i = 0; i < support.size(); ++i) {
    const double d = g[support[i]] - t * signs[i];
    value += d * d;
    on[support[i]] = 1;
  }
  for (std::size_t j = 0; j < g.size(); ++j)
    if (!on[j]) value += shrink(g[j], t) * shrink(g[j], t);
  return value;
}

}  // namespace

TEST_CASE("lambda_k closed forms and bracket") {
  CHECK(lambda_k(1) == doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(1e-12));
  CHECK(lambda_k(2) == doctest::Approx(std::sqrt(M_PI / 2.0)).epsilon(1e-12));
  const double k3 = 2.0 * std::sqrt(2.0) / std::sqrt(M_PI);
  CHECK(lambda_k(3) == doctest::Approx(k3).epsilon(1e-12));
  CHECK(lambda_k(3) >= 1.5);
  CHECK(lambda_k(3) <= std::sqrt(3.0));
  CHECK_THROWS_AS(lambda_k(0), ArgumentError);
  for (long k = 1; k <= 10000; ++k) {
    const double value = lambda_k(k);
    CHECK(value >= k / std::sqrt(k + 1.0));
    CHECK(value <= std::sqrt(static_cast<double>(k)));
  }
}

TEST_CASE("mc width of the full-space cone is the expected Gaussian length") {
  const int p = 25;
  const WidthEstimate est =
      mc_width([](const Vec& g) { return norm2(g); }, p, 4000, 91);
  CHECK(std::abs(est.mean - lambda_k(p)) <= 3.0 * est.stderr_);
  CHECK_THROWS_AS(mc_width([](const Vec&) { return 0.0; }, 4, 1, 0),
                  ArgumentError);
}

TEST_CASE("mc width of subspace cones matches lambda_k") {
  for (int k : {1, 5, 25}) {
    const WidthEstimate est = mc_width(
        [k](const Vec& g) {
          double s = 0.0;
          for (int i = 0; i < k; ++i) s += g[i] * g[i];
          return std::sqrt(s);
        },
        100, 4000, 17);
    CHECK(std::abs(est.mean - lambda_k(k)) <= 3.0 * est.stderr_);
  }
}

TEST_CASE("mc width is deterministic in the seed") {
  auto oracle = [](const Vec& g) { return std::abs(g[0]); };
  const WidthEstimate a = mc_width(oracle, 3, 500, 123);
  const WidthEstimate b = mc_width(oracle, 3, 500, 123);
  CHECK(a.mean == b.mean);
  CHECK(a.stderr_ == b.stderr_);
}

TEST_CASE("l1 normal-cone distance: closed cases and grid oracle") {
  const std::vector<int> support = {0, 2};
  const std::vector<double> signs = {1.0, -1.0};
  CHECK(dist_normal_cone_l1(Vec(5, 0.0), support, signs) == doctest::Approx(0.0));
  CHECK(dist_normal_cone_l1({1.0, 0.0, -1.0, 0.0, 0.0}, support, signs) ==
        doctest::Approx(0.0).epsilon(1e-8));
  CHECK(dist_normal_cone_l1({0.3, 0.4}, {}, {}) == 0.0);

  // Dense 1e6-point grid over the cone scale.
  RngStream rng(5, 0);
  Vec g(10);
  for (auto& e : g) e = rng.next_gaussian();
  const std::vector<int> sup3 = {1, 4, 7};
  const std::vector<double> sgn3 = {1.0, -1.0, 1.0};
  const double got = dist_normal_cone_l1(g, sup3, sgn3);
  double best = 1e300;
  const double hi = 20.0 + norm_inf(g);
  for (int i = 0; i <= 1000000; ++i) {
    const double t = hi * i / 1000000.0;
    best = std::min(best, l1_cone_objective(g, sup3, sgn3, t));
  }
  CHECK(got == doctest::Approx(std::sqrt(best)).epsilon(1e-6));
}

TEST_CASE("l1 distance bisection matches two-stage grid on random instances") {
  RngStream rng(6, 0);
  for (int trial = 0; trial < 1000; ++trial) {
    const int p = 6 + static_cast<int>(rng.next_double() * 8);
    const int s = 1 + static_cast<int>(rng.next_double() * 3);
    Vec g(p);
    for (auto& e : g) e = rng.next_gaussian();
    std::vector<int> support;
    std::vector<double> signs;
    for (int i = 0; i < s; ++i) {
      support.push_back(i);
      signs.push_back(rng.next_double() < 0.5 ? -1.0 : 1.0);
    }
    const double got = dist_normal_cone_l1(g, support, signs);
    const double hi = 20.0 + norm_inf(g);
    double coarse_best = 1e300, coarse_t = 0.0;
    for (int i = 0; i <= 10000; ++i) {
      const double t = hi * i / 10000.0;
      const double val = l1_cone_objective(g, support, signs, t);
      if (val < coarse_best) {
        coarse_best = val;
        coarse_t = t;
      }
    }
    double fine_best = coarse_best;
    for (int i = -10000; i <= 10000; ++i) {
      const double t = coarse_t + (hi / 1e4) * i / 10000.0;
      if (t < 0.0) continue;
      fine_best = std::min(fine_best, l1_cone_objective(g, support, signs, t));
    }
    CHECK(got == doctest::Approx(std::sqrt(fine_best)).epsilon(1e-6));
  }
}

TEST_CASE("nuclear normal-cone construction: hand-evaluated cases") {
  const int m = 4;
  Mat u(m, 1), v(m, 1);
  u(0, 0) = 1.0;
  v(0, 0) = 1.0;

  // G equal to the atom itself: Z(G) = 0, distance ||UV^T||_F = 1.
  Mat g(m, m);
  g(0, 0) = 1.0;
  CHECK(dist_normal_cone_nuclear_ub(g, u, v) == doctest::Approx(1.0).epsilon(1e-10));

  // G supported on the complement: distance is ||G||_op sqrt(r).
  Mat gp(m, m);
  gp(1, 1) = 2.0;
  gp(2, 2) = 0.5;
  CHECK(dist_normal_cone_nuclear_ub(gp, u, v) == doctest::Approx(2.0).epsilon(1e-10));

  Mat bad_u(m, 1);
  bad_u(0, 0) = 2.0;
  CHECK_THROWS_AS(dist_normal_cone_nuclear_ub(g, bad_u, v), ArgumentError);
}

TEST_CASE("width Monte Carlo sits under the closed-form budgets") {
  SetParams l1_params;
  l1_params.s = 5;
  l1_params.p = 100;
  const AtomicSetOracle l1 = make_oracle("l1", l1_params);
  RngStream model_rng(40, 0);
  const AtomicModel l1_model = synthesize_model("l1", l1_params, model_rng);
  const WidthEstimate l1_width = mc_width(
      [&](const Vec& g) { return l1.normal_cone_distance(l1_model, g); }, 100,
      2000, 40);
  const double l1_bound = bound_catalog("l1", l1_params);
  CHECK(l1_bound == doctest::Approx(36.207322735539908).epsilon(1e-12));
  CHECK(l1_width.mean * l1_width.mean <= l1_bound + 3.0 * l1_width.stderr_);

  SetParams nuc_params;
  nuc_params.r = 1;
  nuc_params.m1 = 10;
  nuc_params.m2 = 10;
  const AtomicSetOracle nuc = make_oracle("nuclear", nuc_params);
  RngStream nuc_rng(41, 0);
  const AtomicModel nuc_model = synthesize_model("nuclear", nuc_params, nuc_rng);
  const WidthEstimate nuc_width = mc_width(
      [&](const Vec& g) { return nuc.normal_cone_distance(nuc_model, g); }, 100,
      2000, 41, 0, "upper-bound");
  CHECK(bound_catalog("nuclear", nuc_params) == 57.0);
  CHECK(nuc_width.mean * nuc_width.mean <= 57.0 + 3.0 * nuc_width.stderr_);
  CHECK(nuc_width.kind == "upper-bound");
}

TEST_CASE("direct-sum width bound: subspace plus orthant") {
  const int k = 5, orthant = 20;
  const WidthEstimate combined = mc_width(
      [&](const Vec& g) {
        double s = 0.0;
        for (int i = 0; i < k; ++i) s += g[i] * g[i];
        for (int i = k; i < k + orthant; ++i)
          if (g[i] > 0.0) s += g[i] * g[i];
        return std::sqrt(s);
      },
      k + orthant, 4000, 55);
  const WidthEstimate orthant_only = mc_width(
      [&](const Vec& g) {
        double s = 0.0;
        for (double v : g)
          if (v > 0.0) s += v * v;
        return std::sqrt(s);
      },
      orthant, 4000, 56);
  CHECK(combined.mean * combined.mean <=
        k + orthant_only.mean * orthant_only.mean +
            6.0 * (combined.stderr_ + orthant_only.stderr_));
}

TEST_CASE("closed-form budget catalog") {
  SetParams ortho;
  ortho.m = 20;
  CHECK(bound_catalog("orthogonal", ortho) == 295.0);

  SetParams sign;
  sign.p = 100;
  sign.k = 0;
  CHECK(bound_catalog("sign", sign) == 50.0);
  sign.k = 100;
  CHECK(bound_catalog("sign", sign) == 100.0);  // full hypercube interior

  SetParams l1p;
  l1p.s = 5;
  l1p.p = 100;
  CHECK(bound_catalog("l1", l1p) ==
        doctest::Approx(2.0 * 5.0 * std::log(20.0) + 6.25).epsilon(1e-15));

  SetParams nuc;
  nuc.r = 1;
  nuc.m1 = 20;
  nuc.m2 = 20;
  CHECK(bound_catalog("nuclear", nuc) == 117.0);

  SetParams birkhoff;
  birkhoff.m = 20;
  CHECK(bound_catalog("birkhoff", birkhoff) ==
        doctest::Approx(9.0 * 20.0 * std::log(20.0)).epsilon(1e-15));

  SetParams vt;
  vt.m = 24;
  CHECK(bound_catalog("vertex-transitive", vt) ==
        doctest::Approx(9.0 * std::log(24.0)).epsilon(1e-15));

  SetParams cut;
  cut.m = 10;
  CHECK(bound_catalog("cut-p2", cut) == 22.5);

  SetParams bad;
  bad.s = 6;
  bad.p = 5;
  CHECK_THROWS_AS(bound_catalog("l1", bad), ArgumentError);
  SetParams bad_rank;
  bad_rank.r = 5;
  bad_rank.m1 = 3;
  bad_rank.m2 = 4;
  CHECK_THROWS_AS(bound_catalog("nuclear", bad_rank), ArgumentError);
}

TEST_CASE("volume width bound with the sqrt(p) cap") {
  // Raw formula where the cap does not bite; 3 sqrt(ln 16) ~ 4.995.
  CHECK(bound_volume(0.25, 100) ==
        doctest::Approx(3.0 * std::sqrt(std::log(16.0))).epsilon(1e-12));
  // At p = 9 the same theta exceeds the maximal width sqrt(p) = 3.
  CHECK(bound_volume(0.25, 9) == doctest::Approx(3.0));
  CHECK_THROWS_AS(bound_volume(0.25, 8), ArgumentError);
  CHECK_THROWS_AS(bound_volume(0.0, 9), ArgumentError);

  // theta chosen so log(4/theta) = p/9: the raw bound meets the cap.
  const int p = 36;
  const double theta = 4.0 * std::exp(-p / 9.0);
  CHECK(bound_volume(theta, p) ==
        doctest::Approx(std::sqrt(static_cast<double>(p))));
  CHECK(bound_volume(theta / 100.0, p) ==
        doctest::Approx(std::sqrt(static_cast<double>(p))));

  // Vertex-transitive form: 3 sqrt(log 4m) <= 9 sqrt(log m) for m >= 2.
  for (double m = 2.0; m <= 1e6; m *= 1.37)
    CHECK(3.0 * std::sqrt(std::log(4.0 * m)) <= 9.0 * std::sqrt(std::log(m)));
}

TEST_CASE("width duality budgets") {
  CHECK(duality_budget_self_dual(100) == 50.0);
  CHECK(duality_budget(64, 0.0) == 64.0);
  CHECK(duality_budget(64, 8.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(duality_budget(64, 9.0), ArgumentError);
}

TEST_CASE("measurement budgets from widths") {
  const MeasurementBudget b1 = measurement_budget(6.01, 0.0);
  CHECK(b1.n_exact == 38);
  CHECK(measurement_budget(0.0, 0.0).n_exact == 1);
  const MeasurementBudget ortho = measurement_budget(std::sqrt(295.0), 0.0);
  CHECK(ortho.n_exact == 296);
  CHECK_THROWS_AS(measurement_budget(1.0, 1.0), ArgumentError);

  const MeasurementBudget robust = measurement_budget(6.01, 0.2);
  CHECK(robust.n_robust >= robust.n_exact);
  CHECK(robust.n_robust ==
        static_cast<long>(std::ceil((6.01 * 6.01 + 1.5) / (0.8 * 0.8))));

  // Success probability: zero until lambda_n clears the width, then rising.
  CHECK(b1.success_prob_at(10) == 0.0);
  CHECK(b1.success_prob_at(60) > 0.5);
  CHECK(b1.success_prob_at(200) > 0.99);
  CHECK(b1.success_prob_at(60) <= b1.success_prob_at(100));
}

TEST_CASE("terracini tangent-space dimension floor") {
  CHECK(terracini_lower_bound(27, 2, 1000) == 83);
  CHECK(terracini_lower_bound(18, 1, 100) == 37);
  CHECK(terracini_lower_bound(50, 100, 120) == 120);  // saturates the ambient
  CHECK_THROWS_AS(terracini_lower_bound(-1, 1, 10), ArgumentError);
}

TEST_CASE("minimum-gain estimate: isometry, zero map, and bounds") {
  SetParams params;
  params.s = 2;
  params.p = 20;
  const AtomicSetOracle oracle = make_oracle("l1", params);
  RngStream rng(60, 0);
  const AtomicModel model = synthesize_model("l1", params, rng);

  const LinearMap eye = LinearMap::identity(20);
  CHECK(min_gain_estimate(eye, model, oracle.tangent_sampler, 50, rng) ==
        doctest::Approx(1.0).epsilon(1e-9));

  const LinearMap zero{Mat(16, 20)};
  CHECK(min_gain_estimate(zero, model, oracle.tangent_sampler, 10, rng) ==
        doctest::Approx(0.0));

  LinearMap gaussian = sample_gaussian_map(16, 20, 1.0 / 16.0, rng);
  const double estimate =
      min_gain_estimate(gaussian, model, oracle.tangent_sampler, 500, rng);
  CHECK(estimate >= 0.0);
  CHECK(estimate * estimate <= gaussian.op_norm_sq_estimate() * (1.0 + 1e-6));

  CHECK_THROWS_AS(min_gain_estimate(eye, model, nullptr, 10, rng),
                  CapabilityError);
}
