#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cstddef>
#include <cstring>

#include "atomrec/kernels.hpp"

namespace atomrec::kernels::detail {

namespace {

inline double hsum4(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  double s = hsum4(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double nrm2sq_avx2(const double* x, std::size_t n) { return dot_avx2(x, x, n); }

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void scal_avx2(double alpha, double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= alpha;
}

void vsub_avx2(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i,
                     _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] - b[i];
}

void gemv_avx2(const double* a, std::size_t rows, std::size_t cols,
               const double* x, double* y) {
  for (std::size_t i = 0; i < rows; ++i) y[i] = dot_avx2(a + i * cols, x, cols);
}

void gemv_t_avx2(const double* a, std::size_t rows, std::size_t cols,
                 const double* x, double* y) {
  std::memset(y, 0, cols * sizeof(double));
  for (std::size_t i = 0; i < rows; ++i) axpy_avx2(x[i], a + i * cols, y, cols);
}

void soft_threshold_avx2(const double* x, double mu, double* out,
                         std::size_t n) {
  const __m256d vmu = _mm256_set1_pd(mu);
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    const __m256d mag = _mm256_andnot_pd(sign_mask, v);
    const __m256d shrunk = _mm256_max_pd(_mm256_sub_pd(mag, vmu), zero);
    const __m256d sign = _mm256_and_pd(sign_mask, v);
    _mm256_storeu_pd(out + i, _mm256_or_pd(shrunk, sign));
  }
  for (; i < n; ++i) {
    const double v = x[i];
    out[i] = v > mu ? v - mu : (v < -mu ? v + mu : 0.0);
  }
}

void clamp_min0_avx2(double* x, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_max_pd(_mm256_loadu_pd(x + i), zero));
  for (; i < n; ++i)
    if (x[i] < 0.0) x[i] = 0.0;
}

double shrink_sq_sum_avx2(const double* g, double t, std::size_t n) {
  const __m256d vt = _mm256_set1_pd(t);
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  const __m256d zero = _mm256_setzero_pd();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d mag = _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(g + i));
    const __m256d m = _mm256_max_pd(_mm256_sub_pd(mag, vt), zero);
    acc = _mm256_fmadd_pd(m, m, acc);
  }
  double s = hsum4(acc);
  for (; i < n; ++i) {
    const double m = (g[i] > 0.0 ? g[i] : -g[i]) - t;
    if (m > 0.0) s += m * m;
  }
  return s;
}

double shrink_abs_sum_avx2(const double* g, double t, std::size_t n) {
  const __m256d vt = _mm256_set1_pd(t);
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  const __m256d zero = _mm256_setzero_pd();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d mag = _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(g + i));
    acc = _mm256_add_pd(acc, _mm256_max_pd(_mm256_sub_pd(mag, vt), zero));
  }
  double s = hsum4(acc);
  for (; i < n; ++i) {
    const double m = (g[i] > 0.0 ? g[i] : -g[i]) - t;
    if (m > 0.0) s += m;
  }
  return s;
}

}  // namespace

const Ops avx2_ops = {
    dot_avx2,         nrm2sq_avx2,         axpy_avx2,
    scal_avx2,        vsub_avx2,           gemv_avx2,
    gemv_t_avx2,      soft_threshold_avx2, clamp_min0_avx2,
    shrink_sq_sum_avx2, shrink_abs_sum_avx2,
};

bool avx2_supported() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

}  // namespace atomrec::kernels::detail

#endif  // x86-64
