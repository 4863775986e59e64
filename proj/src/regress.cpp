#include "biblio/regress.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "biblio/kernels.hpp"

namespace biblio {

namespace special {

namespace {

// Continued fraction for the incomplete beta, modified Lentz iteration.
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-15;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double inc_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;  // symmetry I_x(a,b) = 1 - I_{1-x}(b,a)
}

double t_cdf(double t, double df) {
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  const double x = df / (df + t * t);
  const double half_tail = 0.5 * inc_beta(0.5 * df, 0.5, x);
  return t >= 0.0 ? 1.0 - half_tail : half_tail;
}

double t_pvalue(double t, double df) {
  if (std::isinf(t)) return 0.0;
  const double x = df / (df + t * t);
  return inc_beta(0.5 * df, 0.5, x);
}

double t_quantile(double prob, double df) {
  if (prob == 0.5) return 0.0;
  if (prob < 0.5) return -t_quantile(1.0 - prob, df);
  double lo = 0.0, hi = 1.0;
  while (t_cdf(hi, df) < prob) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (t_cdf(mid, df) < prob)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double f_cdf(double f, double df1, double df2) {
  if (f <= 0.0) return 0.0;
  if (std::isinf(f)) return 1.0;
  return inc_beta(0.5 * df1, 0.5 * df2, df1 * f / (df1 * f + df2));
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace special

namespace {

double sample_sd(std::span<const double> v) {
  const int n = static_cast<int>(v.size());
  const double mean = kern::mean(v);
  std::vector<double> dev(v.begin(), v.end());
  for (double& d : dev) d -= mean;
  return std::sqrt(kern::dot(dev, dev) / (n - 1));
}

// Householder QR least squares on A (n x m, column vectors) against y.
// Returns coefficients and, when requested, the diagonal of (A'A)^-1.
struct QrFit {
  std::vector<double> coef;
  std::vector<double> xtx_inv_diag;
};

QrFit qr_solve(std::vector<std::vector<double>> a, std::vector<double> y,
               bool want_cov) {
  const int n = static_cast<int>(y.size());
  const int m = static_cast<int>(a.size());
  if (n < m) throw RegressError("underdetermined system");

  // R overwrites the top of the columns; Householder vectors kept implicitly
  // by applying each reflection to the remaining columns and to y directly.
  for (int j = 0; j < m; ++j) {
    double norm = 0.0;
    for (int i = j; i < n; ++i) norm += a[j][i] * a[j][i];
    norm = std::sqrt(norm);
    if (norm < 1e-12)
      throw RegressError("singular design matrix (rank deficient at column " +
                         std::to_string(j) + ")");
    if (a[j][j] > 0) norm = -norm;
    std::vector<double> v(n - j);
    for (int i = j; i < n; ++i) v[i - j] = a[j][i];
    v[0] -= norm;
    double vnorm2 = 0.0;
    for (double x : v) vnorm2 += x * x;
    if (vnorm2 > 0.0) {
      for (int c = j; c < m; ++c) {
        double dot = 0.0;
        for (int i = j; i < n; ++i) dot += v[i - j] * a[c][i];
        const double f = 2.0 * dot / vnorm2;
        for (int i = j; i < n; ++i) a[c][i] -= f * v[i - j];
      }
      double dot = 0.0;
      for (int i = j; i < n; ++i) dot += v[i - j] * y[i];
      const double f = 2.0 * dot / vnorm2;
      for (int i = j; i < n; ++i) y[i] -= f * v[i - j];
    }
    a[j][j] = norm;
  }

  QrFit fit;
  fit.coef.assign(m, 0.0);
  for (int j = m - 1; j >= 0; --j) {
    double s = y[j];
    for (int c = j + 1; c < m; ++c) s -= a[c][j] * fit.coef[c];
    if (std::fabs(a[j][j]) < 1e-12) throw RegressError("singular design matrix");
    fit.coef[j] = s / a[j][j];
  }

  if (want_cov) {
    // Rinv upper triangular; diag of (A'A)^-1 = row norms^2 of Rinv.
    std::vector<std::vector<double>> rinv(m, std::vector<double>(m, 0.0));
    for (int j = m - 1; j >= 0; --j) {
      rinv[j][j] = 1.0 / a[j][j];
      for (int i = j - 1; i >= 0; --i) {
        double s = 0.0;
        for (int c = i + 1; c <= j; ++c) s += a[c][i] * rinv[c][j];
        rinv[i][j] = -s / a[i][i];
      }
    }
    fit.xtx_inv_diag.assign(m, 0.0);
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j)
        fit.xtx_inv_diag[i] += rinv[i][j] * rinv[i][j];
  }
  return fit;
}

}  // namespace

std::vector<double> vif(const Design& X) {
  const int k = static_cast<int>(X.cols.size());
  const int n = X.rows();
  if (k < 2) return std::vector<double>(k, 1.0);
  std::vector<double> out(k, 0.0);
  for (int j = 0; j < k; ++j) {
    std::vector<std::vector<double>> a;
    a.emplace_back(n, 1.0);  // intercept
    for (int c = 0; c < k; ++c)
      if (c != j) a.push_back(X.cols[c]);
    const auto fit = qr_solve(a, X.cols[j], false);
    // R2 of predictor j on the others
    std::vector<double> fitted(n, fit.coef[0]);
    int ci = 1;
    for (int c = 0; c < k; ++c) {
      if (c == j) continue;
      for (int i = 0; i < n; ++i) fitted[i] += fit.coef[ci] * X.cols[c][i];
      ++ci;
    }
    const double mean = kern::mean(X.cols[j]);
    double sse = 0.0, sst = 0.0;
    for (int i = 0; i < n; ++i) {
      const double e = X.cols[j][i] - fitted[i];
      sse += e * e;
      const double d = X.cols[j][i] - mean;
      sst += d * d;
    }
    if (sst <= 0.0) throw RegressError("constant predictor: " + X.names[j]);
    const double r2 = 1.0 - sse / sst;
    if (1.0 - r2 < 1e-12)
      throw RegressError("perfect collinearity involving " + X.names[j]);
    out[j] = 1.0 / (1.0 - r2);
  }
  return out;
}

std::pair<double, double> anderson_darling(std::span<const double> sample) {
  const int n = static_cast<int>(sample.size());
  if (n < 8) throw RegressError("anderson_darling requires n >= 8");
  const double mean = kern::mean(sample);
  const double sd = sample_sd(sample);
  if (sd <= 0.0 || !std::isfinite(sd))
    throw RegressError("anderson_darling undefined for a constant sample");

  std::vector<double> z(sample.begin(), sample.end());
  for (double& v : z) v = (v - mean) / sd;
  std::sort(z.begin(), z.end());

  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    double lo = special::normal_cdf(z[i]);
    double hi = special::normal_cdf(z[n - 1 - i]);
    lo = std::clamp(lo, 1e-300, 1.0 - 1e-16);
    hi = std::clamp(hi, 1e-300, 1.0 - 1e-16);
    s += (2.0 * i + 1.0) * (std::log(lo) + std::log1p(-hi));
  }
  const double a2 = -n - s / n;
  // D'Agostino-Stephens case 3 (mean and variance estimated)
  const double a_star = a2 * (1.0 + 0.75 / n + 2.25 / (n * n));

  double p;
  if (a_star >= 0.6)
    p = std::exp(1.2937 - 5.709 * a_star + 0.0186 * a_star * a_star);
  else if (a_star > 0.34)
    p = std::exp(0.9177 - 4.279 * a_star - 1.38 * a_star * a_star);
  else if (a_star > 0.2)
    p = 1.0 - std::exp(-8.318 + 42.796 * a_star - 59.938 * a_star * a_star);
  else
    p = 1.0 - std::exp(-13.436 + 101.14 * a_star - 223.73 * a_star * a_star);
  return {a_star, std::clamp(p, 0.0, 1.0)};
}

RegressionResult ols_fit(const Design& X, std::span<const double> y) {
  const int k = static_cast<int>(X.cols.size());
  const int n = X.rows();
  if (k == 0) throw RegressError("no predictors");
  if (static_cast<int>(y.size()) != n) throw RegressError("length mismatch");
  if (n < k + 2) throw RegressError("too few observations for " +
                                    std::to_string(k) + " predictors");

  std::vector<std::vector<double>> a;
  a.emplace_back(n, 1.0);
  for (const auto& col : X.cols) a.push_back(col);
  std::vector<double> yv(y.begin(), y.end());
  const auto fit = qr_solve(a, yv, true);

  RegressionResult res;
  res.n = n;
  res.k = k;

  std::vector<double> fitted(n, fit.coef[0]);
  for (int c = 0; c < k; ++c)
    for (int i = 0; i < n; ++i) fitted[i] += fit.coef[c + 1] * X.cols[c][i];
  res.residuals.resize(n);
  for (int i = 0; i < n; ++i) res.residuals[i] = y[i] - fitted[i];

  const double ybar = kern::mean(y);
  double sse = 0.0, sst = 0.0;
  for (int i = 0; i < n; ++i) {
    sse += res.residuals[i] * res.residuals[i];
    const double d = y[i] - ybar;
    sst += d * d;
  }
  if (sst <= 0.0) throw RegressError("constant response");

  const int df = n - k - 1;
  res.r2 = 1.0 - sse / sst;
  res.adj_r2 = 1.0 - (1.0 - res.r2) * (n - 1) / df;
  const double sigma2 = sse / df;
  const double sd_y = sample_sd(y);
  const double tcrit = special::t_quantile(0.975, df);

  const auto vifs = vif(X);

  auto make_row = [&](int idx, const std::string& name) {
    PredictorRow row;
    row.name = name;
    row.coef = fit.coef[idx];
    row.se = std::sqrt(sigma2 * fit.xtx_inv_diag[idx]);
    row.t = row.se > 0.0 ? row.coef / row.se
                         : (row.coef == 0.0
                                ? 0.0
                                : std::copysign(
                                      std::numeric_limits<double>::infinity(),
                                      row.coef));
    row.p = special::t_pvalue(row.t, df);
    row.ci_lo = row.coef - tcrit * row.se;
    row.ci_hi = row.coef + tcrit * row.se;
    return row;
  };

  res.intercept = make_row(0, "Constant");
  for (int j = 0; j < k; ++j) {
    PredictorRow row = make_row(j + 1, X.names[j]);
    row.beta = row.coef * sample_sd(X.cols[j]) / sd_y;
    row.vif = vifs[j];
    res.predictors.push_back(std::move(row));
  }

  if (res.r2 >= 1.0) {
    res.f_stat = std::numeric_limits<double>::infinity();
    res.f_p = 0.0;
  } else {
    res.f_stat = (res.r2 / k) / ((1.0 - res.r2) / df);
    res.f_p = 1.0 - special::f_cdf(res.f_stat, k, df);
  }

  try {
    std::tie(res.ad_stat, res.ad_p) = anderson_darling(res.residuals);
  } catch (const RegressError&) {
    res.ad_stat = std::numeric_limits<double>::quiet_NaN();
    res.ad_p = std::numeric_limits<double>::quiet_NaN();
  }
  return res;
}

double predict(const RegressionResult& fit, double nr, double tr_percent,
               bool is_public) {
  if (fit.predictors.size() != 3)
    throw RegressError("predict expects the NR + TR100 + dummy model");
  return fit.intercept.coef + fit.predictors[0].coef * nr +
         fit.predictors[1].coef * tr_percent +
         fit.predictors[2].coef * (is_public ? 1.0 : 0.0);
}

}  // namespace biblio
