#include <cstddef>
#include <cstring>

#include "atomrec/kernels.hpp"

namespace atomrec::kernels::detail {

namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s0 = 0.0, s1 = 0.0;
  std::size_t i = 0;
  for (; i + 1 < n; i += 2) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
  }
  if (i < n) s0 += a[i] * b[i];
  return s0 + s1;
}

double nrm2sq_scalar(const double* x, std::size_t n) {
  return dot_scalar(x, x, n);
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scal_scalar(double alpha, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

void vsub_scalar(const double* a, const double* b, double* out,
                 std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

void gemv_scalar(const double* a, std::size_t rows, std::size_t cols,
                 const double* x, double* y) {
  for (std::size_t i = 0; i < rows; ++i)
    y[i] = dot_scalar(a + i * cols, x, cols);
}

void gemv_t_scalar(const double* a, std::size_t rows, std::size_t cols,
                   const double* x, double* y) {
  std::memset(y, 0, cols * sizeof(double));
  for (std::size_t i = 0; i < rows; ++i) axpy_scalar(x[i], a + i * cols, y, cols);
}

void soft_threshold_scalar(const double* x, double mu, double* out,
                           std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double v = x[i];
    if (v > mu)
      out[i] = v - mu;
    else if (v < -mu)
      out[i] = v + mu;
    else
      out[i] = 0.0;
  }
}

void clamp_min0_scalar(double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (x[i] < 0.0) x[i] = 0.0;
}

double shrink_sq_sum_scalar(const double* g, double t, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double m = (g[i] > 0.0 ? g[i] : -g[i]) - t;
    if (m > 0.0) s += m * m;
  }
  return s;
}

double shrink_abs_sum_scalar(const double* g, double t, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double m = (g[i] > 0.0 ? g[i] : -g[i]) - t;
    if (m > 0.0) s += m;
  }
  return s;
}

}  // namespace

const Ops scalar_ops = {
    dot_scalar,         nrm2sq_scalar,         axpy_scalar,
    scal_scalar,        vsub_scalar,           gemv_scalar,
    gemv_t_scalar,      soft_threshold_scalar, clamp_min0_scalar,
    shrink_sq_sum_scalar, shrink_abs_sum_scalar,
};

}  // namespace atomrec::kernels::detail
