#pragma once
// Report emission: fixed 4-decimal delimiter-separated tables for humans and
// diff tools, plus a full-precision JSON sidecar. Every table carries the run
// manifest digest on its first line.

#include <cstdint>
#include <string>
#include <vector>

#include "biblio/pipeline.hpp"
#include "biblio/regress.hpp"
#include "biblio/stats.hpp"

namespace biblio {

// FNV-1a 64 over the file bytes; hex string.
std::string digest_file(const std::string& path);
std::string digest_string(const std::string& bytes);

struct RunManifest {
  std::string tool_version;
  std::string digest;  // over config snapshot + input digests + version
  std::string roster_digest, pubs_digest;
  std::string config_json;  // snapshot
  std::int64_t timestamp = 0;  // unix seconds; honors SOURCE_DATE_EPOCH
  std::vector<std::string> warnings;
};

RunManifest make_manifest(const AssessmentConfig& config,
                          const std::string& roster_path,
                          const std::string& pubs_path,
                          const std::vector<std::string>& warnings);

class ReportWriter {
 public:
  ReportWriter(std::string out_dir, RunManifest manifest);

  void write_manifest() const;
  void write_filter_report(const FilterReport& report) const;
  void write_scores(const PipelineResult& r) const;
  void write_cells(const PipelineResult& r) const;
  void write_indicators(const PipelineResult& r) const;
  void write_ranking(const RankingList& list) const;
  // distribution summaries over P, P_excl, NR, TR
  void write_descriptives(const PipelineResult& r) const;
  void write_shift_summary(const ShiftSummary& s,
                           const std::vector<RankShift>& shifts) const;
  void write_transition(const std::array<std::array<int, 4>, 4>& m) const;
  void write_funding(const FundingScenario& s) const;
  void write_spearman(const PipelineResult& r) const;
  void write_regression(const RegressionResult& fit) const;
  // full-precision sidecar over the university indicators
  void write_sidecar(const PipelineResult& r) const;

  const RunManifest& manifest() const { return manifest_; }

 private:
  std::string path(const std::string& name) const;
  std::string header() const;

  std::string out_dir_;
  RunManifest manifest_;
};

// Regression of P on NR, 100*TR and the public dummy.
RegressionResult fit_indicator_model(const PipelineResult& r);

}  // namespace biblio
