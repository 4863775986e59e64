#include "biblio/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "json.hpp"

using nlohmann::json;

namespace biblio {

namespace {

constexpr const char* kToolVersion = "bibliorank 1.0.0";

std::string fmt4(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::string fmt_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string opt4(const std::optional<double>& v) {
  return v ? fmt4(*v) : std::string();
}

std::uint64_t fnv1a(const std::string& bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string config_snapshot(const AssessmentConfig& cfg) {
  json j;
  j["window_start"] = cfg.window_start;
  j["window_end"] = cfg.window_end;
  j["top_share"] = cfg.top_share;
  j["sds_coverage_threshold"] = cfg.sds_coverage_threshold;
  j["min_cell_size"] = cfg.min_cell_size;
  j["life_science_udas"] = cfg.life_science_udas;
  j["ls_weights"] = {
      {"same_first_last", cfg.ls_weights.same_first_last},
      {"same_rest", cfg.ls_weights.same_rest},
      {"diff_first_last", cfg.ls_weights.diff_first_last},
      {"diff_second_penultimate", cfg.ls_weights.diff_second_penultimate},
      {"diff_rest", cfg.ls_weights.diff_rest},
  };
  return j.dump();
}

}  // namespace

std::string digest_string(const std::string& bytes) {
  return hex64(fnv1a(bytes));
}

std::string digest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "missing";
  std::ostringstream os;
  os << in.rdbuf();
  return digest_string(os.str());
}

RunManifest make_manifest(const AssessmentConfig& config,
                          const std::string& roster_path,
                          const std::string& pubs_path,
                          const std::vector<std::string>& warnings) {
  RunManifest m;
  m.tool_version = kToolVersion;
  m.roster_digest = roster_path.empty() ? "none" : digest_file(roster_path);
  m.pubs_digest = pubs_path.empty() ? "none" : digest_file(pubs_path);
  m.config_json = config_snapshot(config);
  m.digest = digest_string(m.config_json + "|" + m.roster_digest + "|" +
                           m.pubs_digest + "|" + m.tool_version);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"))
    m.timestamp = std::atoll(epoch);
  else
    m.timestamp = static_cast<std::int64_t>(std::time(nullptr));
  m.warnings = warnings;
  return m;
}

ReportWriter::ReportWriter(std::string out_dir, RunManifest manifest)
    : out_dir_(std::move(out_dir)), manifest_(std::move(manifest)) {}

std::string ReportWriter::path(const std::string& name) const {
  return out_dir_ + "/" + name;
}

std::string ReportWriter::header() const {
  return "# manifest=" + manifest_.digest + "\n";
}

void ReportWriter::write_manifest() const {
  json j;
  j["tool_version"] = manifest_.tool_version;
  j["digest"] = manifest_.digest;
  j["roster_digest"] = manifest_.roster_digest;
  j["pubs_digest"] = manifest_.pubs_digest;
  j["config"] = json::parse(manifest_.config_json);
  j["timestamp"] = manifest_.timestamp;
  j["warnings"] = manifest_.warnings;
  std::ofstream out(path("manifest.json"));
  out << j.dump(2) << "\n";
}

void ReportWriter::write_filter_report(const FilterReport& report) const {
  std::ofstream out(path("filter_report.csv"));
  out << header() << "kind,sds_code,university_id,detail\n";
  for (const auto& sds : report.included_sds)
    out << "included_sds," << sds << ",,\n";
  for (const auto& e : report.excluded_sds)
    out << "excluded_sds," << e.sds_code << ",," << e.reason << "\n";
  for (const auto& e : report.excluded_cells)
    out << "excluded_cell," << e.sds_code << "," << e.university_id << ","
        << e.reason << "\n";
  out << "external_slots_nulled,,," << report.external_slots_nulled << "\n";
  out << "final_researchers,,," << report.final_researchers << "\n";
  out << "final_universities,,," << report.final_universities << "\n";
}

void ReportWriter::write_scores(const PipelineResult& r) const {
  std::ofstream out(path("scores.csv"));
  out << header()
      << "researcher_id,university_id,sds_code,rank,p,normalized,percentile,"
         "unproductive,top\n";
  for (const auto& res : r.corpus.researchers) {
    const auto& s = r.scores.scores.at(res.researcher_id);
    out << res.researcher_id << ',' << res.university_id << ','
        << res.field.sds_code << ',' << to_string(res.rank) << ','
        << fmt4(s.p) << ',' << fmt4(s.normalized) << ',' << fmt4(s.percentile)
        << ',' << (s.is_unproductive ? 1 : 0) << ',' << (s.is_top ? 1 : 0)
        << '\n';
  }
}

void ReportWriter::write_cells(const PipelineResult& r) const {
  std::ofstream out(path("cells.csv"));
  out << header() << "sds_code,rank,n,Ap,top_cutoff\n";
  for (const auto& [key, c] : r.scores.cells)
    out << key.sds_code << ',' << to_string(key.rank) << ',' << c.n << ','
        << fmt4(c.Ap) << ',' << fmt4(c.top_cutoff) << '\n';
}

void ReportWriter::write_indicators(const PipelineResult& r) const {
  std::ofstream out(path("indicators.csv"));
  out << header()
      << "university_id,N,P,P_excl,NR,TR,rank_P,quartile_P,rank_P_excl,"
         "quartile_P_excl\n";
  for (const auto& ind : r.indicators)
    out << ind.university_id << ',' << ind.n << ',' << fmt4(ind.P) << ','
        << fmt4(ind.P_excl) << ',' << fmt4(ind.NR) << ',' << fmt4(ind.TR)
        << ',' << ind.rank_P << ',' << ind.quartile_P << ',' << ind.rank_P_excl
        << ',' << ind.quartile_P_excl << '\n';
}

void ReportWriter::write_ranking(const RankingList& list) const {
  std::ofstream out(path("ranking_" + list.metric + ".csv"));
  out << header() << "university_id,value,rank,quartile\n";
  for (const auto& e : list.entries)
    out << e.university_id << ',' << fmt4(e.value) << ',' << e.rank << ','
        << e.quartile << '\n';
}

void ReportWriter::write_descriptives(const PipelineResult& r) const {
  std::vector<double> P, PE, NR, TR;
  for (const auto& ind : r.indicators) {
    P.push_back(ind.P);
    PE.push_back(ind.P_excl);
    NR.push_back(ind.NR);
    TR.push_back(ind.TR);
  }
  const DistributionSummary s[4] = {describe(P), describe(PE), describe(NR),
                                    describe(TR)};
  std::ofstream out(path("descriptives.csv"));
  out << header() << "statistic,P,P_excl,NR,TR\n";
  auto row = [&](const std::string& name, auto get) {
    out << name;
    for (int i = 0; i < 4; ++i) out << ',' << get(s[i]);
    out << '\n';
  };
  row("observations", [](const auto& d) { return std::to_string(d.n); });
  row("mean", [](const auto& d) { return fmt4(d.mean); });
  row("std_dev", [](const auto& d) { return fmt4(d.std_dev); });
  row("minimum", [](const auto& d) { return fmt4(d.min); });
  row("maximum", [](const auto& d) { return fmt4(d.max); });
  row("coeff_of_variation",
      [](const auto& d) { return opt4(d.coefficient_of_variation); });
  row("first_quartile", [](const auto& d) { return fmt4(d.q1); });
  row("median", [](const auto& d) { return fmt4(d.median); });
  row("third_quartile", [](const auto& d) { return fmt4(d.q3); });
  row("skewness", [](const auto& d) { return fmt4(d.skewness); });
  row("gini", [](const auto& d) { return opt4(d.gini); });
}

void ReportWriter::write_shift_summary(
    const ShiftSummary& s, const std::vector<RankShift>& shifts) const {
  {
    std::ofstream out(path("shift_summary.csv"));
    out << header() << "statistic,absolute,signed\n";
    out << "no_variations," << s.unchanged << ',' << s.unchanged << '\n';
    out << "variations," << s.changed << ',' << s.changed << '\n';
    out << "average," << fmt4(s.mean_abs) << ',' << fmt4(0.0) << '\n';
    out << "median," << fmt4(s.median_abs) << ",\n";
    out << "skewness," << fmt4(s.skewness_abs) << ',' << fmt4(s.skewness_signed)
        << '\n';
    out << "std_dev,," << fmt4(s.std_dev_signed) << '\n';
    out << "minimum,0," << s.min_signed << '\n';
    out << "maximum," << std::max(std::abs(s.min_signed), std::abs(s.max_signed))
        << ',' << s.max_signed << '\n';
  }
  {
    std::ofstream out(path("shifts.csv"));
    out << header() << "university_id,delta\n";
    for (const auto& sh : shifts)
      out << sh.university_id << ',' << sh.delta << '\n';
  }
}

void ReportWriter::write_transition(
    const std::array<std::array<int, 4>, 4>& m) const {
  std::ofstream out(path("transition.csv"));
  out << header() << "quartile_P,to_4,to_3,to_2,to_1\n";
  for (int i = 0; i < 4; ++i) {
    out << (4 - i);
    for (int j = 0; j < 4; ++j) out << ',' << m[i][j];
    out << '\n';
  }
}

void ReportWriter::write_funding(const FundingScenario& s) const {
  std::ofstream out(path("funding.csv"));
  out << header() << "list,university_id\n";
  for (const auto& id : s.funded_a) out << "funded_P," << id << '\n';
  for (const auto& id : s.funded_b) out << "funded_P_excl," << id << '\n';
  for (const auto& id : s.gained) out << "gained," << id << '\n';
  for (const auto& id : s.lost) out << "lost," << id << '\n';
}

void ReportWriter::write_spearman(const PipelineResult& r) const {
  std::vector<double> P, NR, TR;
  for (const auto& ind : r.indicators) {
    P.push_back(ind.P);
    NR.push_back(ind.NR);
    TR.push_back(ind.TR);
  }
  std::ofstream out(path("spearman.csv"));
  out << header() << "variable,P,TR,NR\n";
  out << "P," << fmt4(1.0) << ",,\n";
  out << "TR," << fmt4(spearman(TR, P)) << ',' << fmt4(1.0) << ",\n";
  out << "NR," << fmt4(spearman(NR, P)) << ',' << fmt4(spearman(NR, TR)) << ','
      << fmt4(1.0) << '\n';
}

void ReportWriter::write_regression(const RegressionResult& fit) const {
  std::ofstream out(path("regression.csv"));
  out << header()
      << "predictor,coef,se,t,p_value,ci_lo,ci_hi,beta,vif\n";
  auto row = [&](const PredictorRow& r, bool with_extras) {
    out << r.name << ',' << fmt4(r.coef) << ',' << fmt4(r.se) << ','
        << fmt4(r.t) << ',' << fmt4(r.p) << ',' << fmt4(r.ci_lo) << ','
        << fmt4(r.ci_hi) << ',';
    if (with_extras)
      out << fmt4(r.beta) << ',' << fmt4(r.vif);
    else
      out << ',';
    out << '\n';
  };
  row(fit.intercept, false);
  for (const auto& p : fit.predictors) row(p, true);
  out << "r_squared," << fmt4(fit.r2) << ",,,,,,,\n";
  out << "r_squared_adj," << fmt4(fit.adj_r2) << ",,,,,,,\n";
  out << "f_test," << fmt4(fit.f_stat) << ",,," << fmt4(fit.f_p) << ",,,,\n";
  out << "anderson_darling," << fmt4(fit.ad_stat) << ",,," << fmt4(fit.ad_p)
      << ",,,,\n";
}

void ReportWriter::write_sidecar(const PipelineResult& r) const {
  json j;
  j["manifest"] = manifest_.digest;
  json arr = json::array();
  for (const auto& ind : r.indicators) {
    arr.push_back({{"university_id", ind.university_id},
                   {"N", ind.n},
                   {"P", fmt_full(ind.P)},
                   {"P_excl", fmt_full(ind.P_excl)},
                   {"NR", fmt_full(ind.NR)},
                   {"TR", fmt_full(ind.TR)},
                   {"rank_P", ind.rank_P},
                   {"quartile_P", ind.quartile_P},
                   {"rank_P_excl", ind.rank_P_excl},
                   {"quartile_P_excl", ind.quartile_P_excl}});
  }
  j["universities"] = arr;
  std::ofstream out(path("values.json"));
  out << j.dump(2) << "\n";
}

RegressionResult fit_indicator_model(const PipelineResult& r) {
  std::map<std::string, bool> is_public;
  for (const auto& u : r.corpus.universities)
    is_public[u.university_id] = u.is_public;

  Design X;
  X.names = {"NR", "TR100", "Dummy"};
  X.cols.resize(3);
  std::vector<double> y;
  for (const auto& ind : r.indicators) {
    X.cols[0].push_back(ind.NR);
    X.cols[1].push_back(100.0 * ind.TR);  // TR enters the model in percent
    X.cols[2].push_back(is_public.at(ind.university_id) ? 1.0 : 0.0);
    y.push_back(ind.P);
  }
  return ols_fit(X, y);
}

}  // namespace biblio
