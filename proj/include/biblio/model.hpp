#pragma once
// Domain types shared by the whole pipeline. Everything here is a plain
// value type; objects are treated as immutable once validated.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace biblio {

enum class AcademicRank { Full, Associate, Assistant };

const char* to_string(AcademicRank r);
std::optional<AcademicRank> parse_rank(const std::string& s);

struct FieldCode {
  std::string sds_code;
  std::string uda_code;  // parent discipline
  bool life_science = false;
};

struct Researcher {
  std::string researcher_id;
  std::string university_id;
  FieldCode field;
  AcademicRank rank = AcademicRank::Assistant;
  int years_active = 0;  // years of work inside the observation window
};

struct University {
  std::string university_id;
  bool is_public = true;
};

struct SubjectWeight {
  std::string code;
  double weight = 0.0;
};

struct AuthorSlot {
  int position = 0;  // 1-based
  std::optional<std::string> researcher_id;  // null for external co-authors
  std::optional<std::string> university_id;
};

struct Publication {
  std::string pub_id;
  int year = 0;
  long long citations = 0;
  std::vector<SubjectWeight> subject_categories;  // weights sum to 1
  std::vector<AuthorSlot> authors;                // positions 1..n contiguous
};

struct CitationBaseline {
  int year = 0;
  std::string category;
  double median_cited_only = 0.0;  // median over publications with >=1 citation
};

struct ResearcherScore {
  std::string researcher_id;
  double p = 0.0;           // average yearly productivity
  double normalized = 0.0;  // p / Ap for the researcher's SDS x rank cell
  double percentile = 0.0;  // 0 (worst) .. 100 (best) within the cell
  bool is_unproductive = false;  // p == 0
  bool is_top = false;           // national top share within the cell
};

struct UniversityIndicators {
  std::string university_id;
  int n = 0;  // professor headcount after filters
  double P = 0.0;
  double P_excl = 0.0;  // productivity net of unproductive professors
  double NR = 0.0;      // unproductive-professor concentration
  double TR = 0.0;      // top-professor share
  int rank_P = 0, rank_P_excl = 0;
  int quartile_P = 0, quartile_P_excl = 0;  // 4 = best .. 1 = worst
};

// Positional co-author weights applied in life-science fields (3+ authors).
// Each branch must sum to 1 over the whole author list.
struct LifeScienceWeights {
  // first and last authors affiliated with the same university
  double same_first_last = 0.40;
  double same_rest = 0.20;  // split equally among the others
  // first and last authors from different universities
  double diff_first_last = 0.30;
  double diff_second_penultimate = 0.15;
  double diff_rest = 0.10;  // split equally among the remaining authors
};

struct AssessmentConfig {
  int window_start = 2004;
  int window_end = 2008;
  double top_share = 0.20;
  double sds_coverage_threshold = 0.50;
  int min_cell_size = 5;
  std::set<std::string> life_science_udas = {"BIO", "MED", "AGR"};
  LifeScienceWeights ls_weights;

  int window_length() const { return window_end - window_start + 1; }
  bool in_window(int year) const {
    return year >= window_start && year <= window_end;
  }
};

struct Violation {
  std::string field;
  std::string rule;
  std::string message;
};

using Violations = std::vector<Violation>;

Violations validate(const Researcher& r, const AssessmentConfig& cfg);
Violations validate(const University& u);
Violations validate(const Publication& p);
Violations validate(const CitationBaseline& b);
Violations validate(const ResearcherScore& s);
Violations validate(const UniversityIndicators& u);
Violations validate(const AssessmentConfig& cfg);

}  // namespace biblio
