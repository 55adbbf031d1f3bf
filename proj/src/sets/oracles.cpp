#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "atomrec/errors.hpp"
#include "atomrec/geometry.hpp"
#include "atomrec/prox.hpp"
#include "atomrec/sets.hpp"

namespace atomrec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Singular values below 1e-12 * largest are treated as zero throughout.
constexpr double kSpectrumCutoff = 1e-12;

Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
as_matrix(const Vec& x, int rows, int cols) {
  return {x.data(), rows, cols};
}

Vec flatten(const Eigen::MatrixXd& m) {
  Vec out(static_cast<std::size_t>(m.rows()) * m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      out[static_cast<std::size_t>(i) * m.cols() + j] = m(i, j);
  return out;
}

Vec gaussian_vec(int n, RngStream& rng) {
  Vec v(n);
  for (auto& e : v) e = rng.next_gaussian();
  return v;
}

Vec unit_gaussian_vec(int n, RngStream& rng) {
  Vec v = gaussian_vec(n, rng);
  double nrm = norm2(v);
  while (nrm < 1e-12) {
    v = gaussian_vec(n, rng);
    nrm = norm2(v);
  }
  for (auto& e : v) e /= nrm;
  return v;
}

// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the signs
// of the triangular factor's diagonal pushed into Q.
Eigen::MatrixXd haar_orthogonal(int m, RngStream& rng) {
  Eigen::MatrixXd g(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) g(i, j) = rng.next_gaussian();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < m; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

Vec normalized_or_resample(Vec d, const std::function<Vec()>& resample) {
  double nrm = norm2(d);
  while (nrm < 1e-10) {
    d = resample();
    nrm = norm2(d);
  }
  for (auto& e : d) e /= nrm;
  return d;
}

// Uniform sample from the l1 ball of the given radius.
Vec sample_l1_ball(int p, double radius, RngStream& rng) {
  Vec v(p);
  double total = 0.0;
  for (auto& e : v) {
    const double expo = -std::log(1.0 - rng.next_double());
    e = (rng.next_double() < 0.5 ? -expo : expo);
    total += std::abs(e);
  }
  const double shell = std::pow(rng.next_double(), 1.0 / p);
  for (auto& e : v) e *= radius * shell / total;
  return v;
}

double support_and_signs(const AtomicModel& model, std::vector<int>& support,
                         std::vector<double>& signs) {
  support.clear();
  signs.clear();
  const double scale = norm_inf(model.ambient);
  for (std::size_t i = 0; i < model.ambient.size(); ++i) {
    if (std::abs(model.ambient[i]) > 1e-12 * (1.0 + scale)) {
      support.push_back(static_cast<int>(i));
      signs.push_back(model.ambient[i] > 0.0 ? 1.0 : -1.0);
    }
  }
  return scale;
}

double membership_tol(const Vec& x) { return 1e-8 * (1.0 + norm_inf(x)); }

}  // namespace

AtomicSetOracle oracle_l1(int p) {
  if (p < 1) throw ArgumentError("oracle_l1: p must be >= 1");
  AtomicSetOracle o;
  o.set_id = "l1";
  o.ambient_dim = p;
  o.centroid = Vec(p, 0.0);
  o.dual_norm = [](const Vec& x) { return norm_inf(x); };
  o.gauge = [](const Vec& x) { return norm1(x); };
  o.prox = [](const Vec& x, double mu) { return soft_threshold(x, mu); };
  o.atom_sampler = [p](RngStream& rng) {
    Vec a(p, 0.0);
    const int i = std::min(static_cast<int>(rng.next_double() * p), p - 1);
    a[i] = rng.next_double() < 0.5 ? -1.0 : 1.0;
    return a;
  };
  o.tangent_sampler = [p](const AtomicModel& model, RngStream& rng) {
    const double radius = norm1(model.ambient);
    auto draw = [&]() {
      Vec z;
      if (rng.next_double() < 0.5) {
        z = Vec(p, 0.0);
        const int i = std::min(static_cast<int>(rng.next_double() * p), p - 1);
        z[i] = (rng.next_double() < 0.5 ? -1.0 : 1.0) * radius;
      } else {
        z = sample_l1_ball(p, radius, rng);
      }
      return z - model.ambient;
    };
    return normalized_or_resample(draw(), draw);
  };
  o.normal_cone_distance = [](const AtomicModel& model, const Vec& g) {
    std::vector<int> support;
    std::vector<double> signs;
    support_and_signs(model, support, signs);
    return dist_normal_cone_l1(g, support, signs);
  };
  return o;
}

namespace {

struct Svd {
  Eigen::MatrixXd u;
  Eigen::VectorXd s;
  Eigen::MatrixXd v;
};

Svd svd_of(const Vec& x, int rows, int cols) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      as_matrix(x, rows, cols),
      Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

}  // namespace

AtomicSetOracle oracle_nuclear(int m1, int m2) {
  if (m1 < 1 || m2 < 1) throw ArgumentError("oracle_nuclear: m1, m2 must be >= 1");
  AtomicSetOracle o;
  o.set_id = "nuclear";
  o.ambient_dim = m1 * m2;
  o.rows = m1;
  o.cols = m2;
  o.centroid = Vec(o.ambient_dim, 0.0);
  o.dual_norm = [m1, m2](const Vec& x) {
    const Svd f = svd_of(x, m1, m2);
    return f.s.size() > 0 ? f.s(0) : 0.0;
  };
  o.gauge = [m1, m2](const Vec& x) {
    const Svd f = svd_of(x, m1, m2);
    return f.s.sum();
  };
  o.prox = [m1, m2](const Vec& x, double mu) {
    if (mu < 0.0) throw ArgumentError("nuclear prox: mu must be >= 0");
    const Svd f = svd_of(x, m1, m2);
    Eigen::VectorXd s = f.s;
    const double cutoff = s.size() > 0 ? kSpectrumCutoff * s(0) : 0.0;
    for (int i = 0; i < s.size(); ++i) {
      s(i) = std::max(s(i) - mu, 0.0);
      if (s(i) < cutoff) s(i) = 0.0;
    }
    return flatten(f.u * s.asDiagonal() * f.v.transpose());
  };
  o.atom_sampler = [m1, m2](RngStream& rng) {
    const Vec u = unit_gaussian_vec(m1, rng);
    const Vec v = unit_gaussian_vec(m2, rng);
    Vec a(static_cast<std::size_t>(m1) * m2);
    for (int i = 0; i < m1; ++i)
      for (int j = 0; j < m2; ++j) a[static_cast<std::size_t>(i) * m2 + j] = u[i] * v[j];
    return a;
  };
  o.tangent_sampler = [m1, m2, gauge = o.gauge](const AtomicModel& model,
                                                RngStream& rng) {
    const double radius = gauge(model.ambient);
    auto draw = [&]() {
      Vec g(static_cast<std::size_t>(m1) * m2);
      for (auto& e : g) e = rng.next_gaussian();
      const Svd f = svd_of(g, m1, m2);
      const double nuc = f.s.sum();
      const double shell = rng.next_double();
      for (auto& e : g) e *= radius * shell / std::max(nuc, 1e-12);
      return g - model.ambient;
    };
    return normalized_or_resample(draw(), draw);
  };
  o.normal_cone_distance = [m1, m2](const AtomicModel& model, const Vec& g) {
    const Svd f = svd_of(model.ambient, m1, m2);
    int rank = 0;
    const double cutoff = f.s.size() > 0 ? kSpectrumCutoff * f.s(0) : 0.0;
    for (int i = 0; i < f.s.size(); ++i)
      if (f.s(i) > cutoff) ++rank;
    rank = std::max(rank, 1);
    Mat u_frame(m1, rank), v_frame(m2, rank);
    for (int i = 0; i < m1; ++i)
      for (int j = 0; j < rank; ++j) u_frame(i, j) = f.u(i, j);
    for (int i = 0; i < m2; ++i)
      for (int j = 0; j < rank; ++j) v_frame(i, j) = f.v(i, j);
    return dist_normal_cone_nuclear_ub(Mat(m1, m2, g), u_frame, v_frame);
  };
  return o;
}

AtomicSetOracle oracle_linf(int p) {
  if (p < 1) throw ArgumentError("oracle_linf: p must be >= 1");
  AtomicSetOracle o;
  o.set_id = "linf";
  o.ambient_dim = p;
  o.centroid = Vec(p, 0.0);
  o.dual_norm = [](const Vec& x) { return norm1(x); };
  o.gauge = [](const Vec& x) { return norm_inf(x); };
  o.prox = [](const Vec& x, double mu) {
    if (mu < 0.0) throw ArgumentError("linf prox: mu must be >= 0");
    return x - project_l1_ball(x, mu);
  };
  o.atom_sampler = [p](RngStream& rng) {
    Vec a(p);
    for (auto& e : a) e = rng.next_double() < 0.5 ? -1.0 : 1.0;
    return a;
  };
  o.tangent_sampler = [](const AtomicModel& model, RngStream& rng) {
    const double level = norm_inf(model.ambient);
    Vec d(model.ambient.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      const double g = rng.next_gaussian();
      const bool bound = std::abs(model.ambient[i]) >= level * (1.0 - 1e-9);
      // Bound coordinates may only move inward.
      d[i] = bound ? -std::copysign(std::abs(g), model.ambient[i]) : g;
    }
    return normalized_or_resample(std::move(d), [&] {
      Vec z(model.ambient.size());
      for (auto& e : z) e = rng.next_gaussian();
      return z;
    });
  };
  o.normal_cone_distance = [](const AtomicModel& model, const Vec& g) {
    // Normal cone at a point of the scaled hypercube: zero on coordinates
    // strictly inside, sign-aligned on coordinates at the face level.
    const double level = norm_inf(model.ambient);
    double dist_sq = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const bool bound = std::abs(model.ambient[i]) >= level * (1.0 - 1e-9);
      if (!bound)
        dist_sq += g[i] * g[i];
      else if (g[i] * model.ambient[i] < 0.0)
        dist_sq += g[i] * g[i];
    }
    return std::sqrt(dist_sq);
  };
  return o;
}

AtomicSetOracle oracle_spectral(int m) {
  if (m < 1) throw ArgumentError("oracle_spectral: m must be >= 1");
  AtomicSetOracle o;
  o.set_id = "spectral";
  o.ambient_dim = m * m;
  o.rows = m;
  o.cols = m;
  o.centroid = Vec(o.ambient_dim, 0.0);
  o.dual_norm = [m](const Vec& x) {
    const Svd f = svd_of(x, m, m);
    return f.s.sum();
  };
  o.gauge = [m](const Vec& x) {
    const Svd f = svd_of(x, m, m);
    return f.s.size() > 0 ? f.s(0) : 0.0;
  };
  o.prox = [m](const Vec& x, double mu) {
    if (mu < 0.0) throw ArgumentError("spectral prox: mu must be >= 0");
    const Svd f = svd_of(x, m, m);
    Vec s(f.s.data(), f.s.data() + f.s.size());
    const Vec shrunk = project_nonneg_l1_ball(s, mu);
    Eigen::VectorXd kept(f.s.size());
    for (int i = 0; i < f.s.size(); ++i) kept(i) = f.s(i) - shrunk[i];
    return flatten(f.u * kept.asDiagonal() * f.v.transpose());
  };
  o.atom_sampler = [m](RngStream& rng) { return flatten(haar_orthogonal(m, rng)); };
  o.tangent_sampler = [m, gauge = o.gauge](const AtomicModel& model,
                                           RngStream& rng) {
    auto draw = [&]() -> Vec {
      if (rng.next_double() < 0.5) {
        // Skew direction Q W: tangent to the orthogonal group itself.
        Eigen::MatrixXd g(m, m);
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) g(i, j) = rng.next_gaussian();
        const Eigen::MatrixXd w = 0.5 * (g - g.transpose());
        const auto q = as_matrix(model.ambient, m, m);
        return flatten(Eigen::MatrixXd(q) * w);
      }
      Vec z(static_cast<std::size_t>(m) * m);
      for (auto& e : z) e = rng.next_gaussian();
      const Svd f = svd_of(z, m, m);
      const double top = f.s.size() > 0 ? f.s(0) : 1.0;
      const double radius = gauge(model.ambient) * rng.next_double();
      for (auto& e : z) e *= radius / std::max(top, 1e-12);
      return z - model.ambient;
    };
    return normalized_or_resample(draw(), draw);
  };
  return o;
}

namespace {

// Gauge over the cone {X >= 0, equal row and column sums}: the common sum.
double birkhoff_gauge(const Vec& x, int m) {
  const double tol = membership_tol(x);
  Vec row(m, 0.0), col(m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const double v = x[static_cast<std::size_t>(i) * m + j];
      if (v < -tol) return kInf;
      row[i] += v;
      col[j] += v;
    }
  const double t = std::accumulate(row.begin(), row.end(), 0.0) / m;
  for (int i = 0; i < m; ++i)
    if (std::abs(row[i] - t) > tol * m || std::abs(col[i] - t) > tol * m)
      return kInf;
  return t;
}

}  // namespace

AtomicSetOracle oracle_birkhoff(int m) {
  if (m < 2) throw ArgumentError("oracle_birkhoff: m must be >= 2");
  AtomicSetOracle o;
  o.set_id = "birkhoff";
  o.ambient_dim = m * m;
  o.rows = m;
  o.cols = m;
  // Centroid 11^T/m, exposed for recentered variants; the gauge itself is
  // taken with respect to the un-recentered polytope.
  o.centroid = Vec(o.ambient_dim, 1.0 / m);
  o.dual_norm = [m](const Vec& x) {
    const Mat w(m, m, x);
    const std::vector<int> assignment = max_weight_assignment(w);
    double value = 0.0;
    for (int i = 0; i < m; ++i) value += w(i, assignment[i]);
    return value;
  };
  o.gauge = [m](const Vec& x) { return birkhoff_gauge(x, m); };
  GaugeDescription gd;
  gd.ambient = m * m;
  gd.blocks.push_back({"nonneg", [](Vec& xt) { joint_nonneg_project(xt); }});
  gd.blocks.push_back({"row-col-sums", [m](Vec& xt) { joint_ds_affine_project(xt, m); }});
  o.gauge_description = std::move(gd);
  o.atom_sampler = [m](RngStream& rng) {
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = m - 1; i > 0; --i) {
      const int j = std::min(static_cast<int>(rng.next_double() * (i + 1)), i);
      std::swap(perm[i], perm[j]);
    }
    Vec a(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) a[static_cast<std::size_t>(i) * m + perm[i]] = 1.0;
    return a;
  };
  o.tangent_sampler = [m, sampler = o.atom_sampler](const AtomicModel& model,
                                                    RngStream& rng) {
    auto draw = [&]() {
      const double scale = birkhoff_gauge(model.ambient, m);
      const int count = 1 + static_cast<int>(rng.next_double() * 3);
      Vec z(model.ambient.size(), 0.0);
      Vec weights(count);
      double total = 0.0;
      for (auto& w : weights) {
        w = -std::log(1.0 - rng.next_double());
        total += w;
      }
      for (int c = 0; c < count; ++c) {
        RngStream& r = rng;
        const Vec atom = [&] {
          std::vector<int> perm(m);
          std::iota(perm.begin(), perm.end(), 0);
          for (int i = m - 1; i > 0; --i) {
            const int j = std::min(static_cast<int>(r.next_double() * (i + 1)), i);
            std::swap(perm[i], perm[j]);
          }
          Vec a(static_cast<std::size_t>(m) * m, 0.0);
          for (int i = 0; i < m; ++i) a[static_cast<std::size_t>(i) * m + perm[i]] = 1.0;
          return a;
        }();
        const double w = scale * weights[c] / total;
        for (std::size_t i = 0; i < z.size(); ++i) z[i] += w * atom[i];
      }
      return z - model.ambient;
    };
    return normalized_or_resample(draw(), draw);
  };
  return o;
}

namespace {

double min_eigenvalue_sym(const Vec& x, int m) {
  Eigen::MatrixXd sym(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      sym(i, j) = 0.5 * (x[static_cast<std::size_t>(i) * m + j] +
                         x[static_cast<std::size_t>(j) * m + i]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  return eig.eigenvalues().minCoeff();
}

double symmetry_defect(const Vec& x, int m) {
  double worst = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      worst = std::max(worst,
                       std::abs(x[static_cast<std::size_t>(i) * m + j] -
                                x[static_cast<std::size_t>(j) * m + i]));
  return worst;
}

double constant_diagonal(const Vec& x, int m, double tol) {
  double t = 0.0;
  for (int i = 0; i < m; ++i) t += x[static_cast<std::size_t>(i) * (m + 1)];
  t /= m;
  for (int i = 0; i < m; ++i)
    if (std::abs(x[static_cast<std::size_t>(i) * (m + 1)] - t) > tol) return kInf;
  return t;
}

Vec cut_matrix_atom(int m, RngStream& rng) {
  Vec z(m);
  for (auto& e : z) e = rng.next_double() < 0.5 ? -1.0 : 1.0;
  Vec a(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a[static_cast<std::size_t>(i) * m + j] = z[i] * z[j];
  return a;
}

}  // namespace

AtomicSetOracle oracle_elliptope(int m) {
  if (m < 2) throw ArgumentError("oracle_elliptope: m must be >= 2");
  AtomicSetOracle o;
  o.set_id = "cut-p1";
  o.ambient_dim = m * m;
  o.rows = m;
  o.cols = m;
  o.centroid = Vec(o.ambient_dim, 0.0);
  for (int i = 0; i < m; ++i) o.centroid[static_cast<std::size_t>(i) * (m + 1)] = 1.0;
  // Numerical support-function evaluation over the unit elliptope by
  // projected supergradient ascent; diagnostic only, not a certified value.
  o.dual_norm = [m](const Vec& x) {
    const double scale = std::max(norm2(x), 1e-12);
    std::vector<Projection> blocks;
    blocks.push_back([m](Vec& v) {
      Mat mat(m, m, v);
      v = project_psd(mat).data;
    });
    blocks.push_back([m](Vec& v) {
      for (int i = 0; i < m; ++i) v[static_cast<std::size_t>(i) * (m + 1)] = 1.0;
    });
    Vec point(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) point[static_cast<std::size_t>(i) * (m + 1)] = 1.0;
    double best = dot(point, x);
    for (int it = 0; it < 100; ++it) {
      const double step = static_cast<double>(m) / (scale * std::sqrt(it + 1.0));
      Vec moved = point;
      for (std::size_t i = 0; i < moved.size(); ++i) moved[i] += step * x[i];
      point = dykstra(blocks, moved, 1e-8, 200).point;
      best = std::max(best, dot(point, x));
    }
    return best;
  };
  o.gauge = [m](const Vec& x) {
    const double tol = membership_tol(x);
    if (symmetry_defect(x, m) > tol) return kInf;
    const double t = constant_diagonal(x, m, tol);
    if (!std::isfinite(t) || t < -tol) return kInf;
    if (min_eigenvalue_sym(x, m) < -tol * std::max(1.0, t)) return kInf;
    return std::max(t, 0.0);
  };
  GaugeDescription gd;
  gd.ambient = m * m;
  gd.blocks.push_back({"psd", [m](Vec& xt) { joint_psd_project(xt, m); }});
  gd.blocks.push_back({"diag-equals-t", [m](Vec& xt) { joint_unit_diag_project(xt, m); }});
  o.gauge_description = std::move(gd);
  o.atom_sampler = [m](RngStream& rng) { return cut_matrix_atom(m, rng); };
  return o;
}

AtomicSetOracle oracle_hypercube_sym(int m) {
  if (m < 2) throw ArgumentError("oracle_hypercube_sym: m must be >= 2");
  AtomicSetOracle o;
  o.set_id = "cut-p2";
  o.ambient_dim = m * m;
  o.rows = m;
  o.cols = m;
  o.centroid = Vec(o.ambient_dim, 0.0);
  for (int i = 0; i < m; ++i) o.centroid[static_cast<std::size_t>(i) * (m + 1)] = 1.0;
  // Support over symmetric unit-diagonal sign matrices: trace plus the best
  // sign per unordered off-diagonal pair.
  o.dual_norm = [m](const Vec& x) {
    double value = 0.0;
    for (int i = 0; i < m; ++i) value += x[static_cast<std::size_t>(i) * (m + 1)];
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        value += std::abs(x[static_cast<std::size_t>(i) * m + j] +
                          x[static_cast<std::size_t>(j) * m + i]);
    return value;
  };
  o.gauge = [m](const Vec& x) {
    const double tol = membership_tol(x);
    if (symmetry_defect(x, m) > tol) return kInf;
    const double t = constant_diagonal(x, m, tol);
    if (!std::isfinite(t) || t < -tol) return kInf;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        if (std::abs(x[static_cast<std::size_t>(i) * m + j]) > t + tol) return kInf;
    return std::max(t, 0.0);
  };
  GaugeDescription gd;
  gd.ambient = m * m;
  gd.blocks.push_back(
      {"offdiag-box", [m](Vec& xt) { joint_sym_offdiag_box_project(xt, m); }});
  gd.blocks.push_back({"diag-equals-t", [m](Vec& xt) { joint_unit_diag_project(xt, m); }});
  o.gauge_description = std::move(gd);
  o.atom_sampler = [m](RngStream& rng) {
    Vec a = cut_matrix_atom(m, rng);
    // Any symmetric +-1 off-diagonal pattern with unit diagonal is a vertex,
    // not just rank-one ones.
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        const double s = rng.next_double() < 0.5 ? -1.0 : 1.0;
        a[static_cast<std::size_t>(i) * m + j] = s;
        a[static_cast<std::size_t>(j) * m + i] = s;
      }
    return a;
  };
  return o;
}

std::string canonical_set_id(const std::string& set_id) {
  if (set_id == "sparse") return "l1";
  if (set_id == "low-rank") return "nuclear";
  if (set_id == "sign") return "linf";
  if (set_id == "orthogonal") return "spectral";
  if (set_id == "permutation") return "birkhoff";
  return set_id;
}

AtomicSetOracle make_oracle(const std::string& set_id, const SetParams& params) {
  const std::string id = canonical_set_id(set_id);
  if (id == "l1") return oracle_l1(params.p);
  if (id == "nuclear") {
    const int m1 = params.m1 > 0 ? params.m1 : params.m;
    const int m2 = params.m2 > 0 ? params.m2 : params.m;
    return oracle_nuclear(m1, m2);
  }
  if (id == "linf") return oracle_linf(params.p);
  if (id == "spectral") return oracle_spectral(params.m);
  if (id == "birkhoff") return oracle_birkhoff(params.m);
  if (id == "cut-p1") return oracle_elliptope(params.m);
  if (id == "cut-p2") return oracle_hypercube_sym(params.m);
  throw CatalogError("unknown atomic set id: " + set_id);
}

}  // namespace atomrec
