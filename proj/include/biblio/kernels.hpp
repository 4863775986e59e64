#pragma once
// Vectorized reduction kernels with runtime backend selection.
//
// Scalar reference implementations are always available; an AVX2 backend is
// compiled on x86-64 and picked at startup when the CPU supports it. The
// backend can be forced with the environment variable BIBLIO_KERNEL
// (values: "scalar", "avx2"). Backends are equivalence-tested against the
// scalar reference in the unit suite.

#include <cstddef>
#include <span>
#include <utility>

namespace biblio::kern {

struct Backend {
  const char* name;
  double (*sum)(const double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  // count of elements equal to 0.0
  std::size_t (*count_zero)(const double*, std::size_t);
};

// The backend selected for this process. Stable for the process lifetime.
const Backend& active();

const Backend& scalar_backend();
bool avx2_available();
// Null when not compiled in or CPU lacks AVX2.
const Backend* avx2_backend();

inline double sum(std::span<const double> x) {
  return active().sum(x.data(), x.size());
}
inline double dot(std::span<const double> x, std::span<const double> y) {
  return active().dot(x.data(), y.data(), x.size());
}
inline std::size_t count_zero(std::span<const double> x) {
  return active().count_zero(x.data(), x.size());
}

inline double mean(std::span<const double> x) {
  return x.empty() ? 0.0 : sum(x) / static_cast<double>(x.size());
}

}  // namespace biblio::kern
