#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "atomrec/rng.hpp"
#include "atomrec/types.hpp"

namespace atomrec {

// Monte-Carlo estimate of E[dist(g, C*)] for standard Gaussian g, which
// upper-bounds the spherical Gaussian width of the cone C.
struct WidthEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  long n_samples = 0;
  // "exact-oracle" when the distance is to the true normal cone,
  // "upper-bound" when the oracle only dominates it (nuclear construction).
  std::string kind;
};

// Sample-size requirements derived from a width (Gordon escape bounds).
struct MeasurementBudget {
  double width = 0.0;
  double width_sq = 0.0;
  long n_exact = 0;
  long n_robust = 0;
  double epsilon = 0.0;

  // 1 - exp(-[lambda_n - width - sqrt(n) eps]^2 / 2) when the argument is
  // nonnegative, else 0.
  double success_prob_at(long n) const;
};

// Expected length of a k-dimensional standard Gaussian vector,
// sqrt(2) Gamma((k+1)/2) / Gamma(k/2), evaluated through log-gamma.
double lambda_k(long k);

// Averages distance_oracle over n_samples standard Gaussians in R^p, one
// stream index per sample starting at stream_base + 1. The reduction is a
// compensated sum over sample index, so it is independent of evaluation
// schedule.
WidthEstimate mc_width(const std::function<double(const Vec&)>& distance_oracle,
                       int p, long n_samples, std::uint64_t master_seed,
                       std::uint64_t stream_base = 0,
                       const std::string& kind = "exact-oracle");

// Exact distance from g to the normal cone of the l1 ball at a point with
// the given support and sign pattern (1-D convex minimization over the cone
// scale, bisected on the derivative).
double dist_normal_cone_l1(const Vec& g, const std::vector<int>& support,
                           const std::vector<double>& signs);

// Upper bound ||G - Z(G)||_F where Z(G) = ||P_perp(G)|| UV^T + P_perp(G)
// lies in the normal cone of the nuclear ball at a matrix with left/right
// frames U (m1 x r) and V (m2 x r).
double dist_normal_cone_nuclear_ub(const Mat& g, const Mat& u_frame,
                                   const Mat& v_frame);

// Closed-form width^2 bounds / sufficient measurement counts.
// Kinds: "l1" (s, p), "nuclear" (r, m1, m2), "sign"/"linf" (p, k),
// "orthogonal"/"spectral" (m), "vertex-transitive" (m = vertex count),
// "birkhoff" (m), "cut-p2" (m).
double bound_catalog(const std::string& set_kind, const SetParams& params);

// Width bound 3 sqrt(log(4/theta)) from the spherical volume theta of the
// polar, capped at sqrt(p). Requires p >= 9.
double bound_volume(double theta, int p);

// Polar-width budget p - width^2 (width duality).
double duality_budget(int p, double width);
// Self-dual special case p / 2.
double duality_budget_self_dual(int p);

MeasurementBudget measurement_budget(double width, double epsilon);

// Expected secant tangent-space dimension min{p, (k+1) dim(A) + k}; a floor
// on the measurement count for any linear scheme.
long terracini_lower_bound(long dim_atoms, long k, long p);

// min ||Phi z|| over n_dirs sampled unit tangent directions: an upper-bound
// estimate of the restricted minimum gain (diagnostic, not a certificate).
double min_gain_estimate(
    const LinearMap& map, const AtomicModel& model,
    const std::function<Vec(const AtomicModel&, RngStream&)>& tangent_sampler,
    int n_dirs, RngStream& rng);

}  // namespace atomrec
