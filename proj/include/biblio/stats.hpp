#pragma once
// Descriptive statistics, rank-shift analysis, quartile transitions and the
// top-two-quartile funding scenario.

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "biblio/aggregate.hpp"

namespace biblio {

class StatsError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DistributionSummary {
  int n = 0;
  double mean = 0.0;
  double std_dev = 0.0;  // sample, n-1
  double min = 0.0;
  double max = 0.0;
  std::optional<double> coefficient_of_variation;  // 100*std/mean; absent when mean == 0
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double skewness = 0.0;  // adjusted Fisher-Pearson; 0 for constant data
  std::optional<double> gini;  // absent when the data cannot carry a Gini
};

// n >= 2 required; quartiles via inclusive linear interpolation.
DistributionSummary describe(std::span<const double> values);

// G = sum_i (2i - n - 1) x_(i) / (n * sum x) over ascending-sorted values.
// Requires n >= 2, all values >= 0 and a positive total.
double gini(std::span<const double> values);

// Mid-ranks (average rank over ties), 1-based.
std::vector<double> mid_ranks(std::span<const double> values);

// Pearson correlation of mid-rank vectors; errors on constant input.
double spearman(std::span<const double> x, std::span<const double> y);

struct ShiftSummary {
  int unchanged = 0;
  int changed = 0;
  double mean_abs = 0.0;
  double median_abs = 0.0;
  double skewness_abs = 0.0;
  double skewness_signed = 0.0;
  double std_dev_signed = 0.0;
  int min_signed = 0;
  int max_signed = 0;
};

struct RankShift {
  std::string university_id;
  int delta = 0;  // rank_a - rank_b; positive = improved under b
};

// Both rankings must cover the same university set.
std::pair<ShiftSummary, std::vector<RankShift>> rank_shifts(
    const RankingList& a, const RankingList& b);

// entry (i, j): universities in quartile i under a and j under b; indices are
// quartile codes 4..1 mapped to rows 0..3.
std::array<std::array<int, 4>, 4> quartile_transition(const RankingList& a,
                                                      const RankingList& b);

struct FundingScenario {
  // funded = quartiles 4 and 3
  std::vector<std::string> funded_a;
  std::vector<std::string> funded_b;
  std::vector<std::string> gained;  // funded under b but not a
  std::vector<std::string> lost;    // funded under a but not b
};

FundingScenario funding_scenario(const RankingList& a, const RankingList& b);

}  // namespace biblio
