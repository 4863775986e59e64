#include "biblio/kernels.hpp"

#include <random>
#include <vector>

#include "doctest.h"

using namespace biblio;

TEST_CASE("backends agree on sum, dot and count_zero") {
  const auto& scalar = kern::scalar_backend();
  const kern::Backend* avx2 = kern::avx2_backend();

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 17u, 64u, 129u, 1000u}) {
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = dist(rng);
      y[i] = (i % 5 == 0) ? 0.0 : dist(rng);
    }
    // the scalar reference mirrors the SIMD lane structure, so results are
    // bit-identical, not merely close
    if (avx2) {
      CHECK(scalar.sum(x.data(), n) == avx2->sum(x.data(), n));
      CHECK(scalar.dot(x.data(), y.data(), n) == avx2->dot(x.data(), y.data(), n));
      CHECK(scalar.count_zero(y.data(), n) == avx2->count_zero(y.data(), n));
    }
    CHECK(kern::sum(x) == scalar.sum(x.data(), n));
  }
}

TEST_CASE("scalar kernels compute the right values") {
  std::vector<double> x{1.0, 2.0, 3.0, 4.0, 5.0};
  std::vector<double> y{2.0, 0.0, 1.0, 0.0, 3.0};
  CHECK(kern::sum(x) == doctest::Approx(15.0));
  CHECK(kern::dot(x, y) == doctest::Approx(2 + 3 + 15));
  CHECK(kern::count_zero(y) == 2);
  CHECK(kern::mean(x) == doctest::Approx(3.0));
  CHECK(kern::sum(std::span<const double>{}) == 0.0);
}
