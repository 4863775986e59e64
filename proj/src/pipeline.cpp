#include "biblio/pipeline.hpp"

namespace biblio {

PipelineResult run_pipeline(std::vector<Researcher> researchers,
                            std::vector<University> universities,
                            std::vector<Publication> publications,
                            const AssessmentConfig& config, int jobs) {
  PipelineResult out;
  auto [corpus, report] =
      link_and_filter(std::move(researchers), std::move(universities),
                      std::move(publications), config);
  out.corpus = std::move(corpus);
  out.filter = std::move(report);

  out.baselines = compute_baselines(out.corpus.publications);
  out.year_fallback = compute_year_fallbacks(out.corpus.publications);
  out.p_values = compute_productivities(out.corpus, out.baselines,
                                        out.year_fallback, jobs, &out.warnings);
  out.scores = score_cells(out.corpus, out.p_values);
  out.warnings.insert(out.warnings.end(), out.scores.warnings.begin(),
                      out.scores.warnings.end());

  out.reference = build_reference(out.corpus, out.scores);
  out.indicators =
      compute_indicators(out.corpus, out.scores, out.reference, &out.warnings);

  std::map<std::string, double> p_vals, pe_vals;
  for (const auto& ind : out.indicators) {
    p_vals[ind.university_id] = ind.P;
    pe_vals[ind.university_id] = ind.P_excl;
  }
  out.ranking_P = build_ranking(p_vals, "P");
  out.ranking_P_excl = build_ranking(pe_vals, "P_excl");
  return out;
}

PipelineResult run_pipeline(const std::string& roster_path,
                            const std::string& pubs_path,
                            const AssessmentConfig& config, int jobs) {
  RosterData roster = load_roster(roster_path, config);
  auto pubs = load_publications(pubs_path);
  return run_pipeline(std::move(roster.researchers),
                      std::move(roster.universities), std::move(pubs), config,
                      jobs);
}

}  // namespace biblio
