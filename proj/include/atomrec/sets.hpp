#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "atomrec/prox.hpp"
#include "atomrec/rng.hpp"
#include "atomrec/types.hpp"

namespace atomrec {

// One named constraint block of the lifted cone
// {(x, t) : x in t conv(A), t >= 0}; project acts jointly on [x, t].
struct GaugeBlock {
  std::string name;
  std::function<void(Vec&)> project;
};

struct GaugeDescription {
  int ambient = 0;  // dimension of x; the lifted point has ambient+1 entries
  std::vector<GaugeBlock> blocks;
};

// Capability record for one atomic set. Closures are pure given their
// arguments; records are safe to share across threads.
struct AtomicSetOracle {
  std::string set_id;
  int ambient_dim = 0;
  int rows = 0, cols = 0;  // matrix shape; 0 for vector sets

  // Support function sup_{a in A} <x, a>.
  std::function<double(const Vec&)> dual_norm;
  // argmin_z 1/2 ||z - x||^2 + mu ||z||_A; absent for polytope-described sets.
  std::function<Vec(const Vec&, double)> prox;
  std::optional<GaugeDescription> gauge_description;
  std::function<Vec(RngStream&)> atom_sampler;
  std::function<Vec(const AtomicModel&, RngStream&)> tangent_sampler;
  std::function<double(const AtomicModel&, const Vec&)> normal_cone_distance;
  // Gauge value inf{t > 0 : x in t conv(A)}; +inf outside the cone.
  std::function<double(const Vec&)> gauge;
  Vec centroid;

  bool has_prox() const { return static_cast<bool>(prox); }
};

AtomicSetOracle oracle_l1(int p);
AtomicSetOracle oracle_nuclear(int m1, int m2);
AtomicSetOracle oracle_linf(int p);
AtomicSetOracle oracle_spectral(int m);
AtomicSetOracle oracle_birkhoff(int m);
AtomicSetOracle oracle_elliptope(int m);       // cut-p1
AtomicSetOracle oracle_hypercube_sym(int m);   // cut-p2

// Set ids: "l1", "nuclear", "linf", "spectral", "birkhoff", "cut-p1",
// "cut-p2". Aliases accepted: "sparse", "low-rank", "sign", "orthogonal",
// "permutation".
AtomicSetOracle make_oracle(const std::string& set_id, const SetParams& params);

std::string canonical_set_id(const std::string& set_id);

// Ground-truth model with atoms drawn by the set's sampler and a nonnegative
// combination as ambient; single-atom sets use coefficients = [1].
AtomicModel synthesize_model(const std::string& set_id, const SetParams& params,
                             RngStream& rng);

// Exact maximum-weight assignment: permutation pi maximizing
// sum_i w(i, pi(i)). Hungarian algorithm, O(m^3).
std::vector<int> max_weight_assignment(const Mat& weights);

}  // namespace atomrec
