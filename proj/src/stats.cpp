#include "biblio/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "biblio/kernels.hpp"

namespace biblio {

namespace {

double quantile_inclusive(const std::vector<double>& sorted, double q) {
  const std::size_t n = sorted.size();
  const double h = q * static_cast<double>(n - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= n) return sorted[n - 1];
  return sorted[lo] + (h - lo) * (sorted[lo + 1] - sorted[lo]);
}

// Adjusted Fisher-Pearson skewness; 0 for (near-)constant data and n < 3.
double skewness_of(std::span<const double> values) {
  const int n = static_cast<int>(values.size());
  if (n < 3) return 0.0;
  const double mean = kern::mean(values);
  double m2 = 0.0, m3 = 0.0;
  for (double v : values) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= n;
  m3 /= n;
  if (m2 <= 0.0) return 0.0;
  const double g1 = m3 / std::pow(m2, 1.5);
  return g1 * std::sqrt(static_cast<double>(n) * (n - 1)) / (n - 2);
}

double sample_std(std::span<const double> values) {
  const int n = static_cast<int>(values.size());
  const double mean = kern::mean(values);
  std::vector<double> dev(values.begin(), values.end());
  for (double& v : dev) v -= mean;
  return std::sqrt(kern::dot(dev, dev) / (n - 1));
}

}  // namespace

double gini(std::span<const double> values) {
  const int n = static_cast<int>(values.size());
  if (n < 2) throw StatsError("gini requires at least 2 values");
  std::vector<double> sorted(values.begin(), values.end());
  for (double v : sorted)
    if (v < 0.0) throw StatsError("gini requires non-negative values");
  std::sort(sorted.begin(), sorted.end());
  const double total = kern::sum(sorted);
  if (total <= 0.0) throw StatsError("gini undefined for an all-zero sample");
  double acc = 0.0;
  for (int i = 1; i <= n; ++i) acc += (2.0 * i - n - 1) * sorted[i - 1];
  return acc / (n * total);
}

DistributionSummary describe(std::span<const double> values) {
  const int n = static_cast<int>(values.size());
  if (n < 2) throw StatsError("describe requires at least 2 values");
  for (double v : values)
    if (!std::isfinite(v)) throw StatsError("describe requires finite values");

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  DistributionSummary s;
  s.n = n;
  s.mean = kern::mean(values);
  s.std_dev = sample_std(values);
  s.min = sorted.front();
  s.max = sorted.back();
  if (s.mean != 0.0) s.coefficient_of_variation = 100.0 * s.std_dev / s.mean;
  s.q1 = quantile_inclusive(sorted, 0.25);
  s.median = quantile_inclusive(sorted, 0.5);
  s.q3 = quantile_inclusive(sorted, 0.75);
  s.skewness = skewness_of(values);
  if (sorted.front() >= 0.0 && kern::sum(sorted) > 0.0)
    s.gini = gini(values);
  else if (sorted.front() >= 0.0)
    s.gini = 0.0;  // all-zero: perfectly equal
  return s;
}

std::vector<double> mid_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[idx[j + 1]] == values[idx[i]]) ++j;
    const double r = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw StatsError("spearman: length mismatch");
  if (x.size() < 3) throw StatsError("spearman requires at least 3 pairs");
  auto rx = mid_ranks(x);
  auto ry = mid_ranks(y);
  const double mx = kern::mean(rx), my = kern::mean(ry);
  for (double& v : rx) v -= mx;
  for (double& v : ry) v -= my;
  const double sxx = kern::dot(rx, rx);
  const double syy = kern::dot(ry, ry);
  if (sxx == 0.0 || syy == 0.0)
    throw StatsError("spearman undefined for a constant vector");
  return kern::dot(rx, ry) / std::sqrt(sxx * syy);
}

namespace {

std::map<std::string, const RankingEntry*> by_university(const RankingList& l) {
  std::map<std::string, const RankingEntry*> m;
  for (const auto& e : l.entries) m[e.university_id] = &e;
  return m;
}

void check_same_set(const std::map<std::string, const RankingEntry*>& a,
                    const std::map<std::string, const RankingEntry*>& b) {
  for (const auto& [id, _] : a)
    if (!b.count(id))
      throw StatsError("ranking set mismatch: '" + id +
                       "' present only in the first ranking");
  for (const auto& [id, _] : b)
    if (!a.count(id))
      throw StatsError("ranking set mismatch: '" + id +
                       "' present only in the second ranking");
}

}  // namespace

std::pair<ShiftSummary, std::vector<RankShift>> rank_shifts(
    const RankingList& a, const RankingList& b) {
  auto ma = by_university(a);
  auto mb = by_university(b);
  check_same_set(ma, mb);

  std::vector<RankShift> shifts;
  std::vector<double> abs_d, signed_d;
  for (const auto& [id, ea] : ma) {
    const int d = ea->rank - mb.at(id)->rank;
    shifts.push_back({id, d});
    abs_d.push_back(std::abs(d));
    signed_d.push_back(d);
  }

  ShiftSummary s;
  for (const auto& sh : shifts) (sh.delta == 0 ? s.unchanged : s.changed)++;
  s.mean_abs = kern::mean(abs_d);
  std::vector<double> sorted_abs = abs_d;
  std::sort(sorted_abs.begin(), sorted_abs.end());
  s.median_abs = quantile_inclusive(sorted_abs, 0.5);
  s.skewness_abs = skewness_of(abs_d);
  s.skewness_signed = skewness_of(signed_d);
  s.std_dev_signed = signed_d.size() > 1 ? sample_std(signed_d) : 0.0;
  s.min_signed = static_cast<int>(*std::min_element(signed_d.begin(), signed_d.end()));
  s.max_signed = static_cast<int>(*std::max_element(signed_d.begin(), signed_d.end()));
  return {s, std::move(shifts)};
}

std::array<std::array<int, 4>, 4> quartile_transition(const RankingList& a,
                                                      const RankingList& b) {
  auto ma = by_university(a);
  auto mb = by_university(b);
  check_same_set(ma, mb);
  std::array<std::array<int, 4>, 4> m{};
  for (const auto& [id, ea] : ma) {
    const int row = 4 - ea->quartile;          // quartile 4 -> row 0
    const int col = 4 - mb.at(id)->quartile;
    ++m[row][col];
  }
  return m;
}

FundingScenario funding_scenario(const RankingList& a, const RankingList& b) {
  auto ma = by_university(a);
  auto mb = by_university(b);
  check_same_set(ma, mb);
  FundingScenario s;
  for (const auto& [id, ea] : ma) {
    const bool fa = ea->quartile >= 3;
    const bool fb = mb.at(id)->quartile >= 3;
    if (fa) s.funded_a.push_back(id);
    if (fb) s.funded_b.push_back(id);
    if (fb && !fa) s.gained.push_back(id);
    if (fa && !fb) s.lost.push_back(id);
  }
  return s;
}

}  // namespace biblio
