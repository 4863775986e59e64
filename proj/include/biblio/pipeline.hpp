#pragma once
// End-to-end orchestration: load, link, filter, score, aggregate.

#include <map>
#include <string>
#include <vector>

#include "biblio/aggregate.hpp"
#include "biblio/ingest.hpp"
#include "biblio/scoring.hpp"

namespace biblio {

struct PipelineResult {
  Corpus corpus;
  FilterReport filter;
  BaselineMap baselines;
  std::map<int, double> year_fallback;
  std::map<std::string, double> p_values;
  ScoreSet scores;
  NationalReference reference;
  std::vector<UniversityIndicators> indicators;
  RankingList ranking_P;
  RankingList ranking_P_excl;
  std::vector<std::string> warnings;  // everything the stages produced
};

PipelineResult run_pipeline(const std::string& roster_path,
                            const std::string& pubs_path,
                            const AssessmentConfig& config, int jobs = 1);

// Same pipeline starting from already-loaded data.
PipelineResult run_pipeline(std::vector<Researcher> researchers,
                            std::vector<University> universities,
                            std::vector<Publication> publications,
                            const AssessmentConfig& config, int jobs = 1);

}  // namespace biblio
