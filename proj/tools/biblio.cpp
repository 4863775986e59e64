// bibliorank command line: productivity scoring, university indicators,
// ranking comparisons, regression diagnostics and synthetic corpora.

#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "biblio/pipeline.hpp"
#include "biblio/report.hpp"
#include "biblio/synth.hpp"

namespace fs = std::filesystem;
using namespace biblio;

namespace {

struct CommonOpts {
  std::string roster, pubs, config, out = ".";
  int jobs = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool need_inputs = true) {
  if (need_inputs) {
    cmd->add_option("--roster", o.roster, "roster CSV file")->required();
    cmd->add_option("--pubs", o.pubs, "publications JSONL file")->required();
  }
  cmd->add_option("--config", o.config, "assessment config JSON");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--jobs", o.jobs, "worker threads for scoring")
      ->check(CLI::PositiveNumber);
}

AssessmentConfig config_of(const CommonOpts& o) {
  return o.config.empty() ? AssessmentConfig{} : load_config(o.config);
}

ReportWriter writer_for(const CommonOpts& o, const AssessmentConfig& cfg,
                        const std::vector<std::string>& warnings) {
  fs::create_directories(o.out);
  auto manifest = make_manifest(cfg, o.roster, o.pubs, warnings);
  ReportWriter w(o.out, std::move(manifest));
  w.write_manifest();
  return w;
}

const RankingList& pick(const PipelineResult& r, const std::string& metric) {
  return metric == "P_excl" ? r.ranking_P_excl : r.ranking_P;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bibliorank: bibliometric research productivity assessment"};
  app.require_subcommand(1);

  CommonOpts ingest_o, score_o, rank_o, compare_o, regress_o, report_o;
  std::string compare_metric;
  std::string preset = "noncompetitive-IT";
  std::uint64_t seed = 1;
  std::string synth_out = ".";

  auto* c_ingest = app.add_subcommand("ingest", "validate and filter inputs");
  add_common(c_ingest, ingest_o);
  auto* c_score = app.add_subcommand("score", "individual productivity and cell stats");
  add_common(c_score, score_o);
  auto* c_rank = app.add_subcommand("rank", "university indicators and rankings");
  add_common(c_rank, rank_o);
  auto* c_compare = app.add_subcommand("compare", "rank shifts, quartile transitions, funding scenario");
  add_common(c_compare, compare_o);
  c_compare->add_option("--metric", compare_metric,
                        "compare this metric against itself (P or P_excl)")
      ->check(CLI::IsMember({"P", "P_excl"}));
  auto* c_regress = app.add_subcommand("regress", "P on NR, TR and the public dummy");
  add_common(c_regress, regress_o);
  auto* c_synth = app.add_subcommand("synth", "generate a synthetic corpus");
  c_synth->add_option("--preset", preset,
                      "noncompetitive-IT | competitive | tiny-oracle");
  c_synth->add_option("--seed", seed, "generator seed");
  c_synth->add_option("--out", synth_out, "output directory");
  auto* c_report = app.add_subcommand("report", "all tables in one run");
  add_common(c_report, report_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

  try {
    if (c_synth->parsed()) {
      const auto spec = synth_preset(preset, seed);
      fs::create_directories(synth_out);
      generate(spec, synth_out + "/roster.csv", synth_out + "/pubs.jsonl");
      save_config(spec.config, synth_out + "/config.json");
      return 0;
    }

    const CommonOpts& o = c_ingest->parsed()    ? ingest_o
                          : c_score->parsed()   ? score_o
                          : c_rank->parsed()    ? rank_o
                          : c_compare->parsed() ? compare_o
                          : c_regress->parsed() ? regress_o
                                                : report_o;
    const AssessmentConfig cfg = config_of(o);

    if (c_ingest->parsed()) {
      RosterData roster = load_roster(o.roster, cfg);
      auto pubs = load_publications(o.pubs);
      auto [corpus, filter] =
          link_and_filter(std::move(roster.researchers),
                          std::move(roster.universities), std::move(pubs), cfg);
      auto w = writer_for(o, cfg, {});
      w.write_filter_report(filter);
      return 0;
    }

    PipelineResult r = run_pipeline(o.roster, o.pubs, cfg, o.jobs);
    auto w = writer_for(o, cfg, r.warnings);
    w.write_filter_report(r.filter);

    if (c_score->parsed()) {
      w.write_scores(r);
      w.write_cells(r);
      return 0;
    }
    if (c_rank->parsed()) {
      w.write_indicators(r);
      w.write_ranking(r.ranking_P);
      w.write_ranking(r.ranking_P_excl);
      w.write_sidecar(r);
      return 0;
    }
    if (c_compare->parsed()) {
      const RankingList& a =
          compare_metric.empty() ? r.ranking_P : pick(r, compare_metric);
      const RankingList& b =
          compare_metric.empty() ? r.ranking_P_excl : pick(r, compare_metric);
      auto [summary, shifts] = rank_shifts(a, b);
      w.write_shift_summary(summary, shifts);
      w.write_transition(quartile_transition(a, b));
      w.write_funding(funding_scenario(a, b));
      return 0;
    }
    if (c_regress->parsed()) {
      w.write_regression(fit_indicator_model(r));
      return 0;
    }
    // report: everything
    w.write_scores(r);
    w.write_cells(r);
    w.write_indicators(r);
    w.write_ranking(r.ranking_P);
    w.write_ranking(r.ranking_P_excl);
    w.write_sidecar(r);
    w.write_descriptives(r);
    auto [summary, shifts] = rank_shifts(r.ranking_P, r.ranking_P_excl);
    w.write_shift_summary(summary, shifts);
    w.write_transition(quartile_transition(r.ranking_P, r.ranking_P_excl));
    w.write_funding(funding_scenario(r.ranking_P, r.ranking_P_excl));
    w.write_spearman(r);
    w.write_regression(fit_indicator_model(r));
    return 0;
  } catch (const IngestFailure& f) {
    std::cerr << "validation failed: " << f.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
