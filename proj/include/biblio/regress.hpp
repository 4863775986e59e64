#pragma once
// Ordinary least squares with the full diagnostic block: SE, t, p, CI,
// standardized betas, VIF, F test, Anderson-Darling residual normality.

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace biblio {

class RegressError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Column-major design matrix of predictors (no intercept column; the fit
// always adds one).
struct Design {
  std::vector<std::string> names;        // one per predictor
  std::vector<std::vector<double>> cols; // one vector per predictor
  int rows() const { return cols.empty() ? 0 : static_cast<int>(cols[0].size()); }
};

struct PredictorRow {
  std::string name;
  double coef = 0.0;
  double se = 0.0;
  double t = 0.0;
  double p = 0.0;
  double ci_lo = 0.0, ci_hi = 0.0;  // 95%
  double beta = 0.0;                // standardized; unset for the intercept
  double vif = 0.0;                 // unset for the intercept
};

struct RegressionResult {
  PredictorRow intercept;
  std::vector<PredictorRow> predictors;
  double r2 = 0.0;
  double adj_r2 = 0.0;
  double f_stat = 0.0;
  double f_p = 0.0;
  std::vector<double> residuals;
  double ad_stat = 0.0;
  double ad_p = 0.0;
  int n = 0, k = 0;
};

// Householder QR fit; throws RegressError on rank deficiency or when
// n < k + 2. The Anderson-Darling block is skipped (stat/p = NaN) when the
// residuals are constant or n < 8.
RegressionResult ols_fit(const Design& X, std::span<const double> y);

// VIF_j = 1 / (1 - R2_j), predictor j regressed on the others with intercept.
std::vector<double> vif(const Design& X);

// Case-3 statistic (mean and variance estimated) with the small-sample
// multiplier A*^2 = A^2 (1 + 0.75/n + 2.25/n^2) and the D'Agostino-Stephens
// piecewise exponential p-value.
std::pair<double, double> anderson_darling(std::span<const double> sample);

// Linear combination for the indicator model P ~ NR + 100*TR + public.
double predict(const RegressionResult& fit, double nr, double tr_percent,
               bool is_public);

// Self-contained special functions used by the diagnostics.
namespace special {
// Regularized incomplete beta I_x(a, b) via Lentz continued fraction.
double inc_beta(double a, double b, double x);
double t_cdf(double t, double df);
// Two-sided p-value for a t statistic.
double t_pvalue(double t, double df);
// Upper-tail quantile: P(T <= result) = 1 - alpha, by bisection on the CDF.
double t_quantile(double prob, double df);
double f_cdf(double f, double df1, double df2);
double normal_cdf(double z);
}  // namespace special

}  // namespace biblio
