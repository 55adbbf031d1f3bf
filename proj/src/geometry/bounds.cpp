#include <algorithm>
#include <cmath>

#include "atomrec/errors.hpp"
#include "atomrec/geometry.hpp"
#include "atomrec/sets.hpp"

namespace atomrec {

double bound_catalog(const std::string& set_kind, const SetParams& params) {
  const std::string kind = canonical_set_id(set_kind);
  if (kind == "l1") {
    const int s = params.s, p = params.p;
    if (s < 1 || p < 1 || s > p)
      throw ArgumentError("bound_catalog(l1): need 1 <= s <= p");
    return 2.0 * s * std::log(static_cast<double>(p) / s) + 1.25 * s;
  }
  if (kind == "nuclear") {
    const int r = params.r;
    const int m1 = params.m1 > 0 ? params.m1 : params.m;
    const int m2 = params.m2 > 0 ? params.m2 : params.m;
    if (r < 1 || m1 < 1 || m2 < 1 || r > std::min(m1, m2))
      throw ArgumentError("bound_catalog(nuclear): need 1 <= r <= min(m1, m2)");
    return 3.0 * r * (m1 + m2 - r);
  }
  if (kind == "linf") {
    const int p = params.p, k = params.k;
    if (p < 1 || k < 0 || k > p)
      throw ArgumentError("bound_catalog(sign): need 0 <= k <= p");
    return 0.5 * (p + k);
  }
  if (kind == "spectral") {
    const int m = params.m;
    if (m < 1) throw ArgumentError("bound_catalog(orthogonal): need m >= 1");
    return (3.0 * m * m - m) / 4.0;
  }
  if (kind == "vertex-transitive") {
    const int m = params.m;
    if (m < 2) throw ArgumentError("bound_catalog(vertex-transitive): need m >= 2 vertices");
    return 9.0 * std::log(static_cast<double>(m));
  }
  if (kind == "birkhoff") {
    const int m = params.m;
    if (m < 2) throw ArgumentError("bound_catalog(birkhoff): need m >= 2");
    return 9.0 * m * std::log(static_cast<double>(m));
  }
  if (kind == "cut-p2") {
    // Hypercube in the m(m-1)/2 off-diagonal pair coordinates.
    const int m = params.m;
    if (m < 2) throw ArgumentError("bound_catalog(cut-p2): need m >= 2");
    return (static_cast<double>(m) * m - m) / 4.0;
  }
  throw CatalogError("bound_catalog: no closed-form bound for set '" + set_kind + "'");
}

double bound_volume(double theta, int p) {
  if (p < 9) throw ArgumentError("bound_volume: requires p >= 9");
  if (!(theta > 0.0) || theta > 1.0)
    throw ArgumentError("bound_volume: theta must lie in (0, 1]");
  const double raw = 3.0 * std::sqrt(std::log(4.0 / theta));
  // The width of any subset of the sphere is at most sqrt(p).
  return std::min(raw, std::sqrt(static_cast<double>(p)));
}

double duality_budget(int p, double width) {
  if (p < 1) throw ArgumentError("duality_budget: p must be >= 1");
  const double wsq = width * width;
  if (width < 0.0 || wsq > p + 1e-9)
    throw ArgumentError("duality_budget: need 0 <= width^2 <= p");
  return static_cast<double>(p) - wsq;
}

double duality_budget_self_dual(int p) {
  if (p < 1) throw ArgumentError("duality_budget_self_dual: p must be >= 1");
  return 0.5 * p;
}

double MeasurementBudget::success_prob_at(long n) const {
  if (n < 1) return 0.0;
  const double margin = lambda_k(n) - width - std::sqrt(static_cast<double>(n)) * epsilon;
  if (margin < 0.0) return 0.0;
  return 1.0 - std::exp(-0.5 * margin * margin);
}

MeasurementBudget measurement_budget(double width, double epsilon) {
  if (width < 0.0) throw ArgumentError("measurement_budget: width must be >= 0");
  if (epsilon < 0.0 || epsilon >= 1.0)
    throw ArgumentError("measurement_budget: epsilon must lie in [0, 1)");
  MeasurementBudget b;
  b.width = width;
  b.width_sq = width * width;
  b.epsilon = epsilon;
  b.n_exact = static_cast<long>(std::ceil(b.width_sq + 1.0));
  const double denom = (1.0 - epsilon) * (1.0 - epsilon);
  b.n_robust = static_cast<long>(std::ceil((b.width_sq + 1.5) / denom));
  return b;
}

long terracini_lower_bound(long dim_atoms, long k, long p) {
  if (dim_atoms < 0 || k < 1 || p < 1)
    throw ArgumentError("terracini_lower_bound: need dim(A) >= 0, k >= 1, p >= 1");
  return std::min(p, (k + 1) * dim_atoms + k);
}

}  // namespace atomrec
