#include "atomrec/types.hpp"

#include <cmath>
#include <utility>

#include "atomrec/errors.hpp"
#include "atomrec/kernels.hpp"

namespace atomrec {

Mat::Mat(int r, int c, Vec d) : rows(r), cols(c), data(std::move(d)) {
  if (data.size() != static_cast<std::size_t>(r) * c)
    throw ShapeError("matrix data length does not match rows*cols");
}

LinearMap::LinearMap(Mat m) : matrix(std::move(m)) {
  if (matrix.rows < 1 || matrix.cols < 1)
    throw ShapeError("linear map needs n >= 1 and p >= 1");
}

void LinearMap::apply_into(const Vec& x, Vec& out) const {
  if (static_cast<int>(x.size()) != p())
    throw ShapeError("apply: x has dim " + std::to_string(x.size()) +
                     ", map expects p = " + std::to_string(p()));
  out.resize(n());
  kernels::active().gemv(matrix.data.data(), n(), p(), x.data(), out.data());
}

void LinearMap::apply_adjoint_into(const Vec& r, Vec& out) const {
  if (static_cast<int>(r.size()) != n())
    throw ShapeError("apply_adjoint: r has dim " + std::to_string(r.size()) +
                     ", map expects n = " + std::to_string(n()));
  out.resize(p());
  kernels::active().gemv_t(matrix.data.data(), n(), p(), r.data(), out.data());
}

Vec LinearMap::apply(const Vec& x) const {
  Vec out;
  apply_into(x, out);
  return out;
}

Vec LinearMap::apply_adjoint(const Vec& r) const {
  Vec out;
  apply_adjoint_into(r, out);
  return out;
}

double LinearMap::op_norm_sq_estimate(int iterations) const {
  Vec v(p(), 1.0 / std::sqrt(static_cast<double>(p())));
  Vec tmp_n, tmp_p;
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    apply_into(v, tmp_n);
    apply_adjoint_into(tmp_n, tmp_p);
    lambda = norm2(tmp_p);
    if (lambda == 0.0) return 0.0;
    for (int i = 0; i < p(); ++i) v[i] = tmp_p[i] / lambda;
  }
  return lambda;
}

LinearMap LinearMap::identity(int p) {
  Mat m(p, p);
  for (int i = 0; i < p; ++i) m(i, i) = 1.0;
  return LinearMap(std::move(m));
}

LinearMap sample_gaussian_map(int n, int p, double variance, RngStream& rng) {
  if (n < 1 || p < 1) throw ArgumentError("sample_gaussian_map: n, p must be >= 1");
  if (!(variance > 0.0)) throw ArgumentError("sample_gaussian_map: variance must be positive");
  Mat m(n, p);
  const double sigma = std::sqrt(variance);
  for (auto& e : m.data) e = sigma * rng.next_gaussian();
  return LinearMap(std::move(m));
}

double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw ShapeError("dot: size mismatch");
  return kernels::active().dot(a.data(), b.data(), a.size());
}

double norm2sq(const Vec& x) { return kernels::active().nrm2sq(x.data(), x.size()); }

double norm2(const Vec& x) { return std::sqrt(norm2sq(x)); }

double norm1(const Vec& x) {
  double s = 0.0;
  for (double v : x) s += std::abs(v);
  return s;
}

double norm_inf(const Vec& x) {
  double s = 0.0;
  for (double v : x) s = std::max(s, std::abs(v));
  return s;
}

Vec operator-(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw ShapeError("vector subtraction: size mismatch");
  Vec out(a.size());
  kernels::active().vsub(a.data(), b.data(), out.data(), a.size());
  return out;
}

Vec operator+(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw ShapeError("vector addition: size mismatch");
  Vec out(b);
  kernels::active().axpy(1.0, a.data(), out.data(), a.size());
  return out;
}

Vec operator*(double alpha, const Vec& x) {
  Vec out(x);
  kernels::active().scal(alpha, out.data(), out.size());
  return out;
}

bool all_finite(const Vec& x) {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

double asymmetry(const Mat& x) {
  if (x.rows != x.cols) throw ShapeError("asymmetry: matrix must be square");
  double s = 0.0;
  for (int i = 0; i < x.rows; ++i)
    for (int j = i + 1; j < x.cols; ++j) {
      const double d = 0.5 * (x(i, j) - x(j, i));
      s += 2.0 * d * d;
    }
  return std::sqrt(s);
}

}  // namespace atomrec
