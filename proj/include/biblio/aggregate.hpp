#pragma once
// University-level indicators, national reference quantities, ranking lists
// and quartile assignment.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "biblio/ingest.hpp"
#include "biblio/scoring.hpp"

namespace biblio {

struct NationalReference {
  std::map<CellKey, CellStats> cell_stats;
  // SDS -> national share of unproductive professors (aggregate headcount
  // ratio, not a mean of per-university ratios).
  std::map<std::string, double> sds_unproductive_share;
};

NationalReference build_reference(const Corpus& corpus, const ScoreSet& scores);

struct RankingEntry {
  std::string university_id;
  double value = 0.0;
  int rank = 0;      // competition ranking: ties share the smaller rank
  int quartile = 0;  // 4 = best .. 1 = worst
};

struct RankingList {
  std::string metric;  // "P" or "P_excl"
  std::vector<RankingEntry> entries;  // descending by value, then id
};

// P: mean normalized score over all retained professors of a university.
double university_P(const std::string& university_id, const Corpus& corpus,
                    const ScoreSet& scores);

// P_excl: same numerator over productive professors only; 0 when none.
double university_P_excl(const std::string& university_id, const Corpus& corpus,
                         const ScoreSet& scores,
                         std::vector<std::string>* warnings = nullptr);

// NR: headcount-weighted mean over the university's SDSs of the ratio of
// its unproductive share to the national share.
double nr_index(const std::string& university_id, const Corpus& corpus,
                const ScoreSet& scores, const NationalReference& reference);

// TR: share of the university's professors flagged top.
double tr_index(const std::string& university_id, const Corpus& corpus,
                const ScoreSet& scores);

// Descending sort with deterministic tie-break by id; quartile blocks are
// balanced with the remainder going to the best quartiles first
// (17,16,16,16 at n = 65). Ties straddling a block boundary take the better
// quartile of their shared competition rank.
RankingList build_ranking(const std::map<std::string, double>& values,
                          const std::string& metric);

// Everything above for every retained university, ranked by P and by P_excl.
std::vector<UniversityIndicators> compute_indicators(
    const Corpus& corpus, const ScoreSet& scores,
    const NationalReference& reference,
    std::vector<std::string>* warnings = nullptr);

// Quartile block sizes (best first) for n universities.
std::array<int, 4> quartile_block_sizes(int n);

}  // namespace biblio
