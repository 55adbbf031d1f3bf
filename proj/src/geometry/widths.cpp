#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "atomrec/errors.hpp"
#include "atomrec/geometry.hpp"
#include "atomrec/kernels.hpp"

namespace atomrec {

double lambda_k(long k) {
  if (k < 1) throw ArgumentError("lambda_k: k must be >= 1");
  const double kd = static_cast<double>(k);
  return std::sqrt(2.0) *
         std::exp(std::lgamma(0.5 * (kd + 1.0)) - std::lgamma(0.5 * kd));
}

WidthEstimate mc_width(const std::function<double(const Vec&)>& distance_oracle,
                       int p, long n_samples, std::uint64_t master_seed,
                       std::uint64_t stream_base, const std::string& kind) {
  if (n_samples < 2)
    throw ArgumentError("mc_width: need n_samples >= 2 (stderr undefined)");
  if (p < 1) throw ArgumentError("mc_width: p must be >= 1");
  std::vector<double> values(static_cast<std::size_t>(n_samples));
  Vec g(p);
  for (long i = 0; i < n_samples; ++i) {
    RngStream rng(master_seed, stream_base + 1 + static_cast<std::uint64_t>(i));
    for (auto& e : g) e = rng.next_gaussian();
    values[static_cast<std::size_t>(i)] = distance_oracle(g);
  }
  // Compensated sums in sample order: the result does not depend on how the
  // evaluations above were scheduled.
  double sum = 0.0, comp = 0.0;
  for (double v : values) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  const double mean = sum / static_cast<double>(n_samples);
  double sq = 0.0, sq_comp = 0.0;
  for (double v : values) {
    const double d = (v - mean) * (v - mean) - sq_comp;
    const double t = sq + d;
    sq_comp = (t - sq) - d;
    sq = t;
  }
  const double sample_var = sq / static_cast<double>(n_samples - 1);
  WidthEstimate est;
  est.mean = mean;
  est.stderr_ = std::sqrt(sample_var / static_cast<double>(n_samples));
  est.n_samples = n_samples;
  est.kind = kind;
  return est;
}

double dist_normal_cone_l1(const Vec& g, const std::vector<int>& support,
                           const std::vector<double>& signs) {
  if (support.size() != signs.size())
    throw ShapeError("dist_normal_cone_l1: support/sign length mismatch");
  // Empty support: the cone is the whole scaled dual ball, distance 0.
  if (support.empty()) return 0.0;
  const int p = static_cast<int>(g.size());
  std::vector<char> on_support(p, 0);
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i] < 0 || support[i] >= p)
      throw ArgumentError("dist_normal_cone_l1: support index out of range");
    if (std::abs(signs[i]) != 1.0)
      throw ArgumentError("dist_normal_cone_l1: signs must be +-1");
    on_support[support[i]] = 1;
  }
  Vec off;
  off.reserve(g.size() - support.size());
  for (int i = 0; i < p; ++i)
    if (!on_support[i]) off.push_back(g[i]);

  const auto& ops = kernels::active();
  auto derivative = [&](double t) {
    double d = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i)
      d += 2.0 * (t - signs[i] * g[support[i]]);
    d -= 2.0 * ops.shrink_abs_sum(off.data(), t, off.size());
    return d;
  };
  double lo = 0.0;
  double hi = 20.0 + norm_inf(g);
  if (derivative(lo) >= 0.0) {
    hi = 0.0;
  } else {
    while (hi - lo > 1e-10) {
      const double mid = 0.5 * (lo + hi);
      (derivative(mid) < 0.0 ? lo : hi) = mid;
    }
  }
  const double t = 0.5 * (lo + hi);
  double dist_sq = ops.shrink_sq_sum(off.data(), t, off.size());
  for (std::size_t i = 0; i < support.size(); ++i) {
    const double d = g[support[i]] - t * signs[i];
    dist_sq += d * d;
  }
  return std::sqrt(dist_sq);
}

double dist_normal_cone_nuclear_ub(const Mat& g, const Mat& u_frame,
                                   const Mat& v_frame) {
  const int m1 = g.rows, m2 = g.cols, r = u_frame.cols;
  if (u_frame.rows != m1 || v_frame.rows != m2 || v_frame.cols != r)
    throw ShapeError("dist_normal_cone_nuclear_ub: frame shape mismatch");
  using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMat> gm(g.data.data(), m1, m2);
  const Eigen::Map<const RowMat> um(u_frame.data.data(), m1, r);
  const Eigen::Map<const RowMat> vm(v_frame.data.data(), m2, r);
  if ((um.transpose() * um - Eigen::MatrixXd::Identity(r, r)).norm() > 1e-8 ||
      (vm.transpose() * vm - Eigen::MatrixXd::Identity(r, r)).norm() > 1e-8)
    throw ArgumentError("dist_normal_cone_nuclear_ub: frames are not orthonormal");

  const Eigen::MatrixXd pu = Eigen::MatrixXd::Identity(m1, m1) - um * um.transpose();
  const Eigen::MatrixXd pv = Eigen::MatrixXd::Identity(m2, m2) - vm * vm.transpose();
  const Eigen::MatrixXd g_perp = pu * gm * pv;
  const double top =
      g_perp.jacobiSvd().singularValues().size() > 0
          ? g_perp.jacobiSvd().singularValues()(0)
          : 0.0;
  const Eigen::MatrixXd z = top * (um * vm.transpose()) + g_perp;
  return (gm - z).norm();
}

double min_gain_estimate(
    const LinearMap& map, const AtomicModel& model,
    const std::function<Vec(const AtomicModel&, RngStream&)>& tangent_sampler,
    int n_dirs, RngStream& rng) {
  if (!tangent_sampler)
    throw CapabilityError("min_gain_estimate: set exposes no tangent sampler");
  if (n_dirs < 1) throw ArgumentError("min_gain_estimate: n_dirs must be >= 1");
  double gain = std::numeric_limits<double>::infinity();
  Vec image;
  for (int i = 0; i < n_dirs; ++i) {
    const Vec dir = tangent_sampler(model, rng);
    map.apply_into(dir, image);
    gain = std::min(gain, norm2(image));
  }
  return gain;
}

}  // namespace atomrec
