#pragma once
// File loading, validation, cross-linking, and field-of-observation filters.

#include <stdexcept>
#include <string>
#include <vector>

#include "biblio/model.hpp"

namespace biblio {

// A parse or validation problem tied to an input location.
struct InputError {
  std::string file;
  int line = 0;  // 0 when not line-specific
  std::string message;
};

std::string format_errors(const std::vector<InputError>& errors);

// Thrown when a load finishes with a nonempty error list. The full list is
// kept so the CLI can report every problem at once.
class IngestFailure : public std::runtime_error {
 public:
  explicit IngestFailure(std::vector<InputError> errors)
      : std::runtime_error(format_errors(errors)), errors_(std::move(errors)) {}
  const std::vector<InputError>& errors() const { return errors_; }

 private:
  std::vector<InputError> errors_;
};

struct RosterData {
  std::vector<Researcher> researchers;
  std::vector<University> universities;
};

// Fully scans the file and throws IngestFailure with every problem found.
RosterData load_roster(const std::string& path, const AssessmentConfig& cfg);

// One JSON record per line; unresolved researcher ids are allowed here and
// nulled later by link_and_filter.
std::vector<Publication> load_publications(const std::string& path);

AssessmentConfig load_config(const std::string& path);
void save_config(const AssessmentConfig& cfg, const std::string& path);

struct Corpus {
  std::vector<University> universities;
  std::vector<Researcher> researchers;
  std::vector<Publication> publications;
  AssessmentConfig config;
};

struct ExcludedSds {
  std::string sds_code;
  std::string reason;
};

struct ExcludedCell {
  std::string university_id;
  std::string sds_code;
  int size = 0;
  std::string reason;
};

struct FilterReport {
  std::vector<std::string> included_sds;
  std::vector<ExcludedSds> excluded_sds;
  std::vector<ExcludedCell> excluded_cells;
  int external_slots_nulled = 0;
  int final_researchers = 0;
  int final_universities = 0;
};

// Links author slots to the roster (unknown ids become external co-authors),
// applies the SDS coverage filter and the per-(university, SDS) minimum cell
// size, iterating until stable so the operation is idempotent.
// Throws IngestFailure when the filtered corpus is empty.
std::pair<Corpus, FilterReport> link_and_filter(
    std::vector<Researcher> researchers, std::vector<University> universities,
    std::vector<Publication> publications, const AssessmentConfig& config);

}  // namespace biblio
