#include "biblio/regress.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"

using namespace biblio;

namespace {

Design design(std::vector<std::string> names,
              std::vector<std::vector<double>> cols) {
  return Design{std::move(names), std::move(cols)};
}

// Normal-equations solve with full pivot-free Gaussian elimination; slow and
// numerically naive on purpose, used only as an independent check.
std::vector<double> normal_equations(const Design& X,
                                     const std::vector<double>& y) {
  const int n = X.rows();
  const int k = static_cast<int>(X.cols.size());
  const int m = k + 1;
  std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 0.0));
  auto col = [&](int j, int i) -> double {
    return j == 0 ? 1.0 : X.cols[j - 1][i];
  };
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c)
      for (int i = 0; i < n; ++i) a[r][c] += col(r, i) * col(c, i);
    for (int i = 0; i < n; ++i) a[r][m] += col(r, i) * y[i];
  }
  for (int p = 0; p < m; ++p) {
    int best = p;
    for (int r = p + 1; r < m; ++r)
      if (std::abs(a[r][p]) > std::abs(a[best][p])) best = r;
    std::swap(a[p], a[best]);
    for (int r = 0; r < m; ++r) {
      if (r == p) continue;
      const double f = a[r][p] / a[p][p];
      for (int c = p; c <= m; ++c) a[r][c] -= f * a[p][c];
    }
  }
  std::vector<double> beta(m);
  for (int r = 0; r < m; ++r) beta[r] = a[r][m] / a[r][r];
  return beta;
}

}  // namespace

TEST_CASE("ols exact fit") {
  // y = 2 + 3*x1 - x2 exactly
  std::vector<double> x1{1, 2, 3, 4, 5, 6};
  std::vector<double> x2{2, 1, 5, 3, 0, 4};
  std::vector<double> y(6);
  for (int i = 0; i < 6; ++i) y[i] = 2 + 3 * x1[i] - x2[i];
  auto fit = ols_fit(design({"x1", "x2"}, {x1, x2}), y);
  CHECK(fit.intercept.coef == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(fit.predictors[0].coef == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(fit.predictors[1].coef == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
  for (double r : fit.residuals) CHECK(std::abs(r) < 1e-9);
}

TEST_CASE("ols slope is zero when predictor and response are orthogonal") {
  std::vector<double> x{-2, -1, 0, 1, 2};
  std::vector<double> y{1, 1, 1, 1, 1};  // constant response is rejected
  CHECK_THROWS_AS(ols_fit(design({"x"}, {x}), y), RegressError);

  std::vector<double> y2{4, 1, 0, 1, 4};  // even in x: cov(x, y2) = 0
  auto fit = ols_fit(design({"x"}, {x}), y2);
  CHECK(fit.predictors[0].coef == doctest::Approx(0.0));
  CHECK(fit.intercept.coef == doctest::Approx(2.0));
}

TEST_CASE("ols matches a normal-equations oracle on random designs") {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> noise(0.0, 0.5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 65;
    std::vector<double> x1(n), x2(n), x3(n), y(n);
    for (int i = 0; i < n; ++i) {
      x1[i] = u(rng);
      x2[i] = u(rng) + 0.3 * x1[i];
      x3[i] = (i % 2) ? 1.0 : 0.0;
      y[i] = 1.0 + 0.8 * x1[i] - 0.5 * x2[i] + 0.2 * x3[i] + noise(rng);
    }
    auto X = design({"x1", "x2", "x3"}, {x1, x2, x3});
    auto fit = ols_fit(X, y);
    auto ref = normal_equations(X, y);
    CHECK(fit.intercept.coef == doctest::Approx(ref[0]).epsilon(1e-9));
    for (int j = 0; j < 3; ++j)
      CHECK(fit.predictors[j].coef == doctest::Approx(ref[j + 1]).epsilon(1e-9));
    // residuals orthogonal to the fitted space
    double rsum = 0, rdot = 0;
    for (int i = 0; i < n; ++i) {
      rsum += fit.residuals[i];
      rdot += fit.residuals[i] * x1[i];
    }
    CHECK(std::abs(rsum) < 1e-8);
    CHECK(std::abs(rdot) < 1e-8);
  }
}

TEST_CASE("ols diagnostics") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> noise(0.0, 1.0);
  const int n = 40;
  std::vector<double> x1(n), x2(n), y(n);
  for (int i = 0; i < n; ++i) {
    x1[i] = noise(rng);
    x2[i] = noise(rng);
    y[i] = 2 * x1[i] + noise(rng);
  }
  auto fit = ols_fit(design({"x1", "x2"}, {x1, x2}), y);

  SUBCASE("single-predictor R2 equals squared correlation") {
    auto f1 = ols_fit(design({"x1"}, {x1}), y);
    double sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
    for (int i = 0; i < n; ++i) {
      sx += x1[i]; sy += y[i]; sxy += x1[i] * y[i];
      sxx += x1[i] * x1[i]; syy += y[i] * y[i];
    }
    const double num = n * sxy - sx * sy;
    const double den =
        std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
    const double r = num / den;
    CHECK(f1.r2 == doctest::Approx(r * r).epsilon(1e-10));
  }
  SUBCASE("confidence interval brackets the coefficient symmetrically") {
    const auto& p = fit.predictors[0];
    CHECK(p.ci_lo < p.coef);
    CHECK(p.coef < p.ci_hi);
    CHECK(p.coef - p.ci_lo == doctest::Approx(p.ci_hi - p.coef));
  }
  SUBCASE("rescaling a predictor rescales its coefficient only") {
    auto x1s = x1;
    for (auto& v : x1s) v *= 10.0;
    auto f2 = ols_fit(design({"x1", "x2"}, {x1s, x2}), y);
    CHECK(f2.predictors[0].coef ==
          doctest::Approx(fit.predictors[0].coef / 10.0).epsilon(1e-9));
    CHECK(f2.predictors[0].t == doctest::Approx(fit.predictors[0].t));
    CHECK(f2.predictors[0].beta == doctest::Approx(fit.predictors[0].beta));
    CHECK(f2.r2 == doctest::Approx(fit.r2).epsilon(1e-12));
  }
  SUBCASE("t and p are consistent") {
    for (const auto& p : fit.predictors) {
      CHECK(p.t == doctest::Approx(p.coef / p.se));
      CHECK(p.p == doctest::Approx(special::t_pvalue(p.t, n - 3)).epsilon(1e-12));
    }
  }
}

TEST_CASE("ols rejects degenerate inputs") {
  std::vector<double> x{1, 2, 3, 4, 5};
  std::vector<double> y{2, 4, 6, 8, 10};
  CHECK_THROWS_AS(ols_fit(design({"a", "b"}, {x, x}), y), RegressError);  // rank
  std::vector<double> shorty{1, 2, 3};
  CHECK_THROWS_AS(
      ols_fit(design({"a", "b"}, {{1, 2, 3}, {2, 1, 4}}), shorty),
      RegressError);  // n < k + 2
}

TEST_CASE("vif") {
  SUBCASE("orthogonal predictors have VIF 1") {
    std::vector<double> x1{-1, -1, 1, 1};
    std::vector<double> x2{-1, 1, -1, 1};
    auto v = vif(design({"x1", "x2"}, {x1, x2}));
    CHECK(v[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(v[1] == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("two correlated predictors give 1/(1-r^2)") {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> noise(0.0, 1.0);
    const int n = 200;
    std::vector<double> x1(n), x2(n);
    for (int i = 0; i < n; ++i) {
      x1[i] = noise(rng);
      x2[i] = 0.8 * x1[i] + 0.6 * noise(rng);
    }
    double sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
    for (int i = 0; i < n; ++i) {
      sx += x1[i]; sy += x2[i]; sxy += x1[i] * x2[i];
      sxx += x1[i] * x1[i]; syy += x2[i] * x2[i];
    }
    const double r = (n * sxy - sx * sy) /
                     std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
    auto v = vif(design({"x1", "x2"}, {x1, x2}));
    CHECK(v[0] == doctest::Approx(1.0 / (1.0 - r * r)).epsilon(1e-9));
    CHECK(v[1] == doctest::Approx(v[0]).epsilon(1e-9));
  }
  SUBCASE("duplicated predictor is rejected") {
    std::vector<double> x{1, 2, 3, 4, 5};
    CHECK_THROWS_AS(vif(design({"a", "b"}, {x, x})), RegressError);
  }
}

TEST_CASE("special functions against frozen references") {
  SUBCASE("two-sided t p-values") {
    // (t, df, p) reference values computed with an external library
    const struct { double t, df, p; } cases[] = {
        {2.0, 5, 0.101939478830},   {1.5, 10, 0.164507326445},
        {2.8, 30, 0.008853109437},  {0.5, 61, 0.618874056041},
        {3.44, 61, 0.001054957337}, {4.72, 61, 0.000014220996},
        {1.96, 1000, 0.050273184956},
    };
    for (const auto& c : cases) {
      CHECK(special::t_pvalue(c.t, c.df) == doctest::Approx(c.p).epsilon(1e-6));
      CHECK(special::t_pvalue(-c.t, c.df) ==
            doctest::Approx(c.p).epsilon(1e-6));
    }
  }
  SUBCASE("F upper tails") {
    const struct { double f, d1, d2, p; } cases[] = {
        {292.25, 3, 61, 3.887446812173e-36},
        {5.0, 2, 20, 1.734152991583e-02},
        {1.0, 4, 50, 4.164214325294e-01},
        {10.0, 1, 8, 1.334906342602e-02},
    };
    for (const auto& c : cases)
      CHECK(1.0 - special::f_cdf(c.f, c.d1, c.d2) ==
            doctest::Approx(c.p).epsilon(1e-6));
  }
  SUBCASE("t quantiles at 0.975") {
    const struct { double df, q; } cases[] = {
        {5, 2.570581835636},
        {30, 2.042272456301},
        {61, 1.999623584995},
        {1000, 1.962339080826},
    };
    for (const auto& c : cases)
      CHECK(special::t_quantile(0.975, c.df) ==
            doctest::Approx(c.q).epsilon(1e-8));
  }
  SUBCASE("normal CDF") {
    CHECK(special::normal_cdf(0.0) == doctest::Approx(0.5));
    CHECK(special::normal_cdf(1.959963984540054) ==
          doctest::Approx(0.975).epsilon(1e-9));
  }
  SUBCASE("incomplete beta symmetry") {
    for (double x : {0.1, 0.3, 0.5, 0.7, 0.9})
      CHECK(special::inc_beta(2.5, 4.0, x) ==
            doctest::Approx(1.0 - special::inc_beta(4.0, 2.5, 1.0 - x))
                .epsilon(1e-12));
  }
}

TEST_CASE("anderson_darling") {
  SUBCASE("gaussian samples rarely rejected") {
    int accepted = 0;
    for (int seed = 0; seed < 20; ++seed) {
      std::mt19937_64 rng(100 + seed);
      std::normal_distribution<double> d(3.0, 2.0);
      std::vector<double> v(500);
      for (auto& x : v) x = d(rng);
      auto [stat, p] = anderson_darling(v);
      if (p > 0.05) ++accepted;
    }
    CHECK(accepted >= 18);
  }
  SUBCASE("bimodal sample strongly rejected") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> d(0.0, 0.5);
    std::vector<double> v;
    for (int i = 0; i < 250; ++i) v.push_back(d(rng) - 5.0);
    for (int i = 0; i < 250; ++i) v.push_back(d(rng) + 5.0);
    auto [stat, p] = anderson_darling(v);
    CHECK(p < 0.001);
  }
  SUBCASE("constant sample errors") {
    std::vector<double> v(20, 1.0);
    CHECK_THROWS_AS(anderson_darling(v), RegressError);
  }
}

TEST_CASE("predict applies the three-predictor model") {
  RegressionResult fit;
  fit.intercept.coef = 0.5;
  fit.predictors = {{"NR"}, {"TR"}, {"Public"}};
  fit.predictors[0].coef = 0.2;
  fit.predictors[1].coef = 0.01;
  fit.predictors[2].coef = -0.1;
  CHECK(predict(fit, 1.0, 20.0, true) ==
        doctest::Approx(0.5 + 0.2 + 0.2 - 0.1));
  CHECK(predict(fit, 0.0, 0.0, false) == doctest::Approx(0.5));
}
