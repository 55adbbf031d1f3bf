#pragma once

#include "atomrec/types.hpp"

namespace atomrec::testing {

// Dense two-phase simplex with Bland's rule for
//   min c^T x  s.t.  A x = b, x >= 0.
// Consistent redundant rows are dropped after phase 1. Exact up to
// floating-point pivoting; used only as an independent test oracle.
struct LpResult {
  bool feasible = false;
  bool bounded = true;
  Vec x;
  double objective = 0.0;
};

LpResult solve_lp(const Mat& a, const Vec& b, const Vec& c);

// min ||x||_1 s.t. Phi x = y, via the split x = u - v.
LpResult solve_l1_lp(const LinearMap& map, const Vec& y);

// min t s.t. Phi vec(X) = y, row sums = t, col sums = t, X >= 0, t >= 0.
// Returns x = [vec(X), t].
LpResult solve_birkhoff_lp(const LinearMap& map, const Vec& y, int m);

}  // namespace atomrec::testing
