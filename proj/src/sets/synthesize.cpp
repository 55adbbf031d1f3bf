#include <algorithm>
#include <cmath>
#include <numeric>

#include "atomrec/errors.hpp"
#include "atomrec/sets.hpp"

namespace atomrec {

namespace {

double positive_coefficient(RngStream& rng) {
  double c = std::abs(rng.next_gaussian());
  while (c < 1e-6) c = std::abs(rng.next_gaussian());
  return c;
}

AtomicModel combine(std::string set_id, std::vector<Vec> atoms, Vec coefficients) {
  AtomicModel model;
  model.set_id = std::move(set_id);
  model.ambient.assign(atoms.front().size(), 0.0);
  for (std::size_t a = 0; a < atoms.size(); ++a)
    for (std::size_t i = 0; i < model.ambient.size(); ++i)
      model.ambient[i] += coefficients[a] * atoms[a][i];
  model.atoms = std::move(atoms);
  model.coefficients = std::move(coefficients);
  return model;
}

}  // namespace

AtomicModel synthesize_model(const std::string& set_id, const SetParams& params,
                             RngStream& rng) {
  const std::string id = canonical_set_id(set_id);
  const AtomicSetOracle oracle = make_oracle(id, params);

  if (id == "l1") {
    const int p = params.p;
    const int s = params.s;
    if (s < 1 || s > p) throw ArgumentError("synthesize_model(l1): need 1 <= s <= p");
    std::vector<int> indices(p);
    std::iota(indices.begin(), indices.end(), 0);
    for (int i = 0; i < s; ++i) {
      const int j = i + std::min(static_cast<int>(rng.next_double() * (p - i)), p - i - 1);
      std::swap(indices[i], indices[j]);
    }
    std::vector<Vec> atoms;
    Vec coefficients;
    for (int i = 0; i < s; ++i) {
      Vec a(p, 0.0);
      a[indices[i]] = rng.next_double() < 0.5 ? -1.0 : 1.0;
      atoms.push_back(std::move(a));
      coefficients.push_back(positive_coefficient(rng));
    }
    return combine(id, std::move(atoms), std::move(coefficients));
  }

  if (id == "nuclear") {
    const int r = params.r;
    const int m1 = params.m1 > 0 ? params.m1 : params.m;
    const int m2 = params.m2 > 0 ? params.m2 : params.m;
    if (r < 1 || r > std::min(m1, m2))
      throw ArgumentError("synthesize_model(nuclear): need 1 <= r <= min(m1, m2)");
    std::vector<Vec> atoms;
    Vec coefficients;
    for (int i = 0; i < r; ++i) {
      atoms.push_back(oracle.atom_sampler(rng));
      coefficients.push_back(positive_coefficient(rng));
    }
    return combine(id, std::move(atoms), std::move(coefficients));
  }

  if (id == "linf") {
    const int p = params.p;
    const int k = params.k;
    if (k < 0 || k >= p) throw ArgumentError("synthesize_model(linf): need 0 <= k < p");
    Vec base = oracle.atom_sampler(rng);
    if (k == 0) return combine(id, {std::move(base)}, {1.0});
    // Point on a k-face: flip-blend k coordinates strictly inside (-1, 1).
    std::vector<int> indices(p);
    std::iota(indices.begin(), indices.end(), 0);
    for (int i = 0; i < k; ++i) {
      const int j = i + std::min(static_cast<int>(rng.next_double() * (p - i)), p - i - 1);
      std::swap(indices[i], indices[j]);
    }
    std::vector<Vec> atoms{base};
    Vec weights;
    double total = 0.0;
    for (int i = 0; i < k; ++i) {
      Vec flipped = base;
      flipped[indices[i]] = -flipped[indices[i]];
      atoms.push_back(std::move(flipped));
      const double w = 0.05 + 0.4 * rng.next_double();
      weights.push_back(w);
      total += w;
    }
    if (total > 0.9)
      for (auto& w : weights) w *= 0.8 / total;
    Vec coefficients{1.0 - std::accumulate(weights.begin(), weights.end(), 0.0)};
    coefficients.insert(coefficients.end(), weights.begin(), weights.end());
    return combine(id, std::move(atoms), std::move(coefficients));
  }

  if (id == "spectral" || id == "birkhoff" || id == "cut-p1" || id == "cut-p2") {
    Vec atom = id == "cut-p2" ? [&] {
      // Cut-matrix truth for both relaxations so the recovery curves compare
      // like with like.
      SetParams q = params;
      return make_oracle("cut-p1", q).atom_sampler(rng);
    }() : oracle.atom_sampler(rng);
    return combine(id, {std::move(atom)}, {1.0});
  }

  throw CatalogError("unknown atomic set id: " + set_id);
}

}  // namespace atomrec
