#pragma once

#include <optional>
#include <string>
#include <vector>

#include "atomrec/rng.hpp"

namespace atomrec {

using Vec = std::vector<double>;

// Dense row-major matrix. Matrix-valued atomic sets operate on the row-major
// flattening, so one measurement pipeline covers vector and matrix models.
struct Mat {
  int rows = 0;
  int cols = 0;
  Vec data;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}
  Mat(int r, int c, Vec d);

  double& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
  std::size_t size() const { return data.size(); }
};

// The measurement operator x |-> Phi x with adjoint Phi^T.
struct LinearMap {
  Mat matrix;  // n x p

  LinearMap() = default;
  explicit LinearMap(Mat m);

  int n() const { return matrix.rows; }
  int p() const { return matrix.cols; }

  Vec apply(const Vec& x) const;
  Vec apply_adjoint(const Vec& r) const;
  void apply_into(const Vec& x, Vec& out) const;
  void apply_adjoint_into(const Vec& r, Vec& out) const;

  // ||Phi||^2 estimate by power iteration on Phi^T Phi.
  double op_norm_sq_estimate(int iterations = 50) const;

  static LinearMap identity(int p);
};

// Entries i.i.d. N(0, variance), row-major draw order; deterministic in rng.
LinearMap sample_gaussian_map(int n, int p, double variance, RngStream& rng);

// A ground-truth decomposition x* = sum_i c_i a_i with c_i >= 0 and every
// a_i a member of the named atomic set.
struct AtomicModel {
  std::string set_id;
  std::vector<Vec> atoms;
  Vec coefficients;
  Vec ambient;
};

// Per-set size parameters; only the fields a set consumes are read.
struct SetParams {
  int s = 0;   // sparsity (l1)
  int r = 0;   // rank (nuclear)
  int m = 0;   // square side (spectral, birkhoff, cut-p1, cut-p2; alias for m1=m2)
  int m1 = 0;  // rows (nuclear)
  int m2 = 0;  // cols (nuclear)
  int p = 0;   // ambient dimension (l1, linf)
  int k = 0;   // face dimension (linf)
};

struct Problem {
  LinearMap map;
  Vec y;
  std::string set_id;
  SetParams params;
  std::optional<double> delta;  // absent: noiseless program
  std::optional<AtomicModel> truth;
};

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& x);
double norm2sq(const Vec& x);
double norm1(const Vec& x);
double norm_inf(const Vec& x);
Vec operator-(const Vec& a, const Vec& b);
Vec operator+(const Vec& a, const Vec& b);
Vec operator*(double alpha, const Vec& x);

bool all_finite(const Vec& x);

// Frobenius-symmetric part delta ||X - X^T||_F / 2 for square inputs.
double asymmetry(const Mat& x);

}  // namespace atomrec
