#pragma once

#include <cstddef>
#include <string>

namespace atomrec::kernels {

// Data-parallel inner loops behind the measurement pipeline and the
// Monte-Carlo width reductions. Every kernel has a scalar reference
// implementation and (on x86-64) an AVX2+FMA variant; the active variant is
// chosen at load time from CPUID and can be forced with ATOMIC_SIMD=scalar
// or ATOMIC_SIMD=avx2. The variants are equivalence-tested against each
// other; reductions may differ in the last few ulps because of summation
// order.
struct Ops {
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*nrm2sq)(const double* x, std::size_t n);
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  void (*scal)(double alpha, double* x, std::size_t n);
  void (*vsub)(const double* a, const double* b, double* out, std::size_t n);
  // y = A x with A row-major rows x cols.
  void (*gemv)(const double* a, std::size_t rows, std::size_t cols,
               const double* x, double* y);
  // y = A^T x with A row-major rows x cols (y has cols entries).
  void (*gemv_t)(const double* a, std::size_t rows, std::size_t cols,
                 const double* x, double* y);
  void (*soft_threshold)(const double* x, double mu, double* out,
                         std::size_t n);
  void (*clamp_min0)(double* x, std::size_t n);
  // sum_i shrink(g_i, t)^2 and sum_i |shrink(g_i, t)|.
  double (*shrink_sq_sum)(const double* g, double t, std::size_t n);
  double (*shrink_abs_sum)(const double* g, double t, std::size_t n);
};

// Active (dispatched) kernel table.
const Ops& active();

// Reference implementations, always available.
const Ops& scalar();

// "scalar" or "avx2"; what active() resolved to.
const std::string& active_name();

namespace detail {
extern const Ops scalar_ops;
#if defined(__x86_64__) || defined(_M_X64)
extern const Ops avx2_ops;
bool avx2_supported();
#endif
}  // namespace detail

}  // namespace atomrec::kernels
