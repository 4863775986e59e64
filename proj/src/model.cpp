#include "biblio/model.hpp"

#include <cmath>
#include <set>

namespace biblio {

namespace {
constexpr double kWeightTol = 1e-9;

void require(Violations& out, bool ok, const std::string& field,
             const std::string& rule, const std::string& message) {
  if (!ok) out.push_back({field, rule, message});
}
}  // namespace

const char* to_string(AcademicRank r) {
  switch (r) {
    case AcademicRank::Full: return "FULL";
    case AcademicRank::Associate: return "ASSOCIATE";
    case AcademicRank::Assistant: return "ASSISTANT";
  }
  return "?";
}

std::optional<AcademicRank> parse_rank(const std::string& s) {
  if (s == "FULL") return AcademicRank::Full;
  if (s == "ASSOCIATE") return AcademicRank::Associate;
  if (s == "ASSISTANT") return AcademicRank::Assistant;
  return std::nullopt;
}

Violations validate(const Researcher& r, const AssessmentConfig& cfg) {
  Violations v;
  require(v, !r.researcher_id.empty(), "researcher_id", "nonempty",
          "researcher_id must not be empty");
  require(v, !r.university_id.empty(), "university_id", "nonempty",
          "university_id must not be empty");
  require(v, !r.field.sds_code.empty(), "field.sds_code", "nonempty",
          "sds_code must not be empty");
  require(v, r.years_active >= 1, "years_active", "years_active >= 1",
          "years_active must be at least 1");
  require(v, r.years_active <= cfg.window_length(), "years_active",
          "years_active <= window length",
          "years_active exceeds the observation window length");
  return v;
}

Violations validate(const University& u) {
  Violations v;
  require(v, !u.university_id.empty(), "university_id", "nonempty",
          "university_id must not be empty");
  return v;
}

Violations validate(const Publication& p) {
  Violations v;
  require(v, !p.pub_id.empty(), "pub_id", "nonempty", "pub_id must not be empty");
  require(v, p.citations >= 0, "citations", "citations >= 0",
          "citations must be non-negative");
  require(v, !p.authors.empty(), "authors", "nonempty",
          "publication must have at least one author");
  require(v, !p.subject_categories.empty(), "subject_categories", "nonempty",
          "publication must have at least one subject category");

  double wsum = 0.0;
  for (const auto& sc : p.subject_categories) {
    wsum += sc.weight;
    require(v, sc.weight > 0.0, "subject_categories", "weight > 0",
            "category weight must be positive: " + sc.code);
  }
  if (!p.subject_categories.empty())
    require(v, std::fabs(wsum - 1.0) <= kWeightTol, "subject_categories",
            "weights sum to 1", "category weights must sum to 1");

  std::set<int> positions;
  for (const auto& a : p.authors) {
    require(v, positions.insert(a.position).second, "authors",
            "position unique", "duplicate author position in " + p.pub_id);
  }
  if (!p.authors.empty() && positions.size() == p.authors.size()) {
    bool contiguous = *positions.begin() == 1 &&
                      *positions.rbegin() == static_cast<int>(p.authors.size());
    require(v, contiguous, "authors", "positions 1..n contiguous",
            "author positions must be 1..n");
  }
  return v;
}

Violations validate(const CitationBaseline& b) {
  Violations v;
  require(v, b.median_cited_only >= 1.0, "median_cited_only",
          "median_cited_only >= 1",
          "cited-only median cannot be below 1");
  return v;
}

Violations validate(const ResearcherScore& s) {
  Violations v;
  require(v, s.p >= 0.0, "p", "p >= 0", "productivity must be non-negative");
  require(v, s.is_unproductive == (s.p == 0.0), "is_unproductive",
          "is_unproductive <=> p == 0", "unproductive flag inconsistent with p");
  require(v, !(s.is_top && s.is_unproductive), "is_top",
          "is_top => productive", "top researcher cannot be unproductive");
  require(v, s.percentile >= 0.0 && s.percentile <= 100.0, "percentile",
          "0 <= percentile <= 100", "percentile out of range");
  return v;
}

Violations validate(const UniversityIndicators& u) {
  Violations v;
  require(v, u.P_excl >= u.P - 1e-12, "P_excl", "P_excl >= P",
          "productivity net of unproductives cannot be below P");
  require(v, u.TR >= 0.0 && u.TR <= 1.0, "TR", "0 <= TR <= 1",
          "TR out of range");
  require(v, u.quartile_P >= 1 && u.quartile_P <= 4, "quartile_P",
          "quartile in 1..4", "quartile out of range");
  require(v, u.quartile_P_excl >= 1 && u.quartile_P_excl <= 4,
          "quartile_P_excl", "quartile in 1..4", "quartile out of range");
  return v;
}

Violations validate(const AssessmentConfig& cfg) {
  Violations v;
  require(v, cfg.window_start <= cfg.window_end, "window",
          "start <= end", "window start must not exceed window end");
  require(v, cfg.top_share > 0.0 && cfg.top_share < 1.0, "top_share",
          "0 < top_share < 1", "top_share must lie strictly inside (0,1)");
  require(v, cfg.sds_coverage_threshold >= 0.0 &&
                 cfg.sds_coverage_threshold <= 1.0,
          "sds_coverage_threshold", "in [0,1]",
          "sds_coverage_threshold out of range");
  require(v, cfg.min_cell_size >= 1, "min_cell_size", ">= 1",
          "min_cell_size must be at least 1");

  const auto& w = cfg.ls_weights;
  // s >= 5 same-university branch: 0.4 + 0.4 + rest
  require(v, std::fabs(2 * w.same_first_last + w.same_rest - 1.0) <= kWeightTol,
          "ls_weights", "same-university row sums to 1",
          "same-university weight row must sum to 1");
  require(v,
          std::fabs(2 * w.diff_first_last + 2 * w.diff_second_penultimate +
                    w.diff_rest - 1.0) <= kWeightTol,
          "ls_weights", "different-university row sums to 1",
          "different-university weight row must sum to 1");
  return v;
}

}  // namespace biblio
