#pragma once
// Citation standardization, fractional authorship, individual productivity
// (yearly, field-normalized) and per-cell classification.

#include <map>
#include <string>
#include <vector>

#include "biblio/ingest.hpp"
#include "biblio/model.hpp"

namespace biblio {

// National comparison cell: SDS crossed with academic rank.
struct CellKey {
  std::string sds_code;
  AcademicRank rank;
  auto operator<=>(const CellKey&) const = default;
};

struct CellStats {
  CellKey cell;
  int n = 0;
  double Ap = 0.0;          // national mean of p, zeros included
  double top_cutoff = 0.0;  // p of the k-th best member
};

// (year, category) -> cited-only median.
using BaselineMap = std::map<std::pair<int, std::string>, double>;

// Median citations over publications with >=1 citation, per year x category.
// Multi-category publications enter every one of their categories. Pairs with
// no cited publication are absent.
BaselineMap compute_baselines(const std::vector<Publication>& pubs);

// Year -> cited-only median pooled across all categories; the fallback when a
// (year, category) pair has no cited publication.
std::map<int, double> compute_year_fallbacks(const std::vector<Publication>& pubs);

// Weighted average over the publication's categories of citations / median.
// Appends a warning when the per-category baseline is missing and the year
// fallback is used.
double standardized_impact(const Publication& pub, const BaselineMap& baselines,
                           const std::map<int, double>& year_fallback,
                           std::vector<std::string>* warnings = nullptr);

// Fraction of the publication's impact credited to the author at
// authors[slot_index]. Life-science fields with 3+ authors use positional
// weights; everything else is 1/s.
double author_share(const Publication& pub, std::size_t slot_index,
                    const AssessmentConfig& config, bool life_science);

// Yearly field-normalized productivity from the researcher's publication slots
// (publication, author slot index), window filtering already applied.
double researcher_productivity(
    const Researcher& researcher,
    const std::vector<std::pair<const Publication*, std::size_t>>& slots,
    const BaselineMap& baselines, const std::map<int, double>& year_fallback,
    const AssessmentConfig& config);

struct ScoreSet {
  std::map<CellKey, CellStats> cells;
  std::map<std::string, ResearcherScore> scores;
  std::vector<std::string> warnings;
};

// p for every researcher of the corpus, over window publications.
// jobs > 1 splits the researcher list across threads; output is identical for
// any job count.
std::map<std::string, double> compute_productivities(
    const Corpus& corpus, const BaselineMap& baselines,
    const std::map<int, double>& year_fallback, int jobs = 1,
    std::vector<std::string>* warnings = nullptr);

// Cell statistics, normalized scores, percentiles, unproductive/top flags.
ScoreSet score_cells(const Corpus& corpus,
                     const std::map<std::string, double>& p_values);

}  // namespace biblio
