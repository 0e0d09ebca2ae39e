// Compiled with -mavx2 -mfma; only reached after a CPUID check in dispatch.cpp.
#include <immintrin.h>

#include "dchaos/kernels.hpp"

namespace dchaos::kernels::avx2 {
namespace {

inline double horizontal_sum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double sum = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

double weighted_sum_squares(const double* v, const double* w, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d v0 = _mm256_loadu_pd(v + i);
    __m256d v1 = _mm256_loadu_pd(v + i + 4);
    acc0 = _mm256_fmadd_pd(_mm256_mul_pd(v0, v0), _mm256_loadu_pd(w + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_mul_pd(v1, v1), _mm256_loadu_pd(w + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    __m256d v0 = _mm256_loadu_pd(v + i);
    acc0 = _mm256_fmadd_pd(_mm256_mul_pd(v0, v0), _mm256_loadu_pd(w + i), acc0);
  }
  double sum = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) sum += w[i] * v[i] * v[i];
  return sum;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(a, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void average(const double* a, const double* b, double* out, std::size_t n) {
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d s = _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(half, s));
  }
  for (; i < n; ++i) out[i] = 0.5 * (a[i] + b[i]);
}

constexpr KernelTable kTable{dot, weighted_sum_squares, axpy, average};

}  // namespace

const KernelTable& table() { return kTable; }

}  // namespace dchaos::kernels::avx2
