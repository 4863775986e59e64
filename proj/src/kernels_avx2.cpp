// AVX2 backend. This translation unit is compiled with -mavx2; nothing here
// may be called before avx2_available() has been checked.

#include "biblio/kernels.hpp"

#include <immintrin.h>

namespace biblio::kern {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swap = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swap));
}

double avx2_sum(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double tail = 0.0;
  for (; i < n; ++i) tail += x[i];
  // lane order matches the scalar reference's 4 accumulators
  __m128d lo = _mm256_castpd256_pd128(acc);
  __m128d hi = _mm256_extractf128_pd(acc, 1);
  double a0 = _mm_cvtsd_f64(lo);
  double a1 = _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
  double a2 = _mm_cvtsd_f64(hi);
  double a3 = _mm_cvtsd_f64(_mm_unpackhi_pd(hi, hi));
  return ((a0 + a1) + (a2 + a3)) + tail;
}

double avx2_dot(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vx = _mm256_loadu_pd(x + i);
    __m256d vy = _mm256_loadu_pd(y + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(vx, vy));
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += x[i] * y[i];
  __m128d lo = _mm256_castpd256_pd128(acc);
  __m128d hi = _mm256_extractf128_pd(acc, 1);
  double a0 = _mm_cvtsd_f64(lo);
  double a1 = _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
  double a2 = _mm_cvtsd_f64(hi);
  double a3 = _mm_cvtsd_f64(_mm_unpackhi_pd(hi, hi));
  return ((a0 + a1) + (a2 + a3)) + tail;
}

std::size_t avx2_count_zero(const double* x, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  std::size_t c = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d eq = _mm256_cmp_pd(_mm256_loadu_pd(x + i), zero, _CMP_EQ_OQ);
    c += static_cast<std::size_t>(__builtin_popcount(
        static_cast<unsigned>(_mm256_movemask_pd(eq))));
  }
  for (; i < n; ++i) c += (x[i] == 0.0);
  return c;
}

const Backend kAvx2{"avx2", avx2_sum, avx2_dot, avx2_count_zero};

}  // namespace

bool avx2_available() { return __builtin_cpu_supports("avx2"); }

const Backend* avx2_backend() { return avx2_available() ? &kAvx2 : nullptr; }

}  // namespace biblio::kern
