#include "biblio/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace biblio::kern {

namespace {

double scalar_sum(const double* x, std::size_t n) {
  // 4-way unrolled accumulation; matches the lane structure of the SIMD
  // backends closely enough that cross-backend drift stays tiny.
  double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a0 += x[i];
    a1 += x[i + 1];
    a2 += x[i + 2];
    a3 += x[i + 3];
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += x[i];
  return ((a0 + a1) + (a2 + a3)) + tail;
}

double scalar_dot(const double* x, const double* y, std::size_t n) {
  double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a0 += x[i] * y[i];
    a1 += x[i + 1] * y[i + 1];
    a2 += x[i + 2] * y[i + 2];
    a3 += x[i + 3] * y[i + 3];
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += x[i] * y[i];
  return ((a0 + a1) + (a2 + a3)) + tail;
}

std::size_t scalar_count_zero(const double* x, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += (x[i] == 0.0);
  return c;
}

const Backend kScalar{"scalar", scalar_sum, scalar_dot, scalar_count_zero};

const Backend& select() {
  if (const char* force = std::getenv("BIBLIO_KERNEL")) {
    if (std::strcmp(force, "scalar") == 0) return kScalar;
    if (std::strcmp(force, "avx2") == 0) {
      if (const Backend* b = avx2_backend()) return *b;
      return kScalar;  // requested but unavailable
    }
  }
  if (const Backend* b = avx2_backend()) return *b;
  return kScalar;
}

}  // namespace

const Backend& scalar_backend() { return kScalar; }

const Backend& active() {
  static const Backend& chosen = select();
  return chosen;
}

#if !defined(BIBLIO_HAVE_AVX2_TU)
bool avx2_available() { return false; }
const Backend* avx2_backend() { return nullptr; }
#endif

}  // namespace biblio::kern
