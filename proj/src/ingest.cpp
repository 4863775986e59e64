#include "biblio/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

using nlohmann::json;

namespace biblio {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool parse_int(const std::string& s, long long& out) {
  try {
    size_t pos = 0;
    out = std::stoll(s, &pos);
    return pos == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

std::string format_errors(const std::vector<InputError>& errors) {
  std::ostringstream os;
  os << errors.size() << " input error(s)";
  for (const auto& e : errors) {
    os << "\n  " << e.file;
    if (e.line > 0) os << ":" << e.line;
    os << ": " << e.message;
  }
  return os.str();
}

RosterData load_roster(const std::string& path, const AssessmentConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw IngestFailure({{path, 0, "cannot open file"}});

  std::vector<InputError> errors;
  RosterData data;
  std::unordered_map<std::string, int> seen_researcher;  // id -> line
  std::unordered_map<std::string, bool> university_public;
  std::unordered_map<std::string, std::string> sds_uda;

  std::string line;
  int lineno = 0;
  if (!std::getline(in, line)) throw IngestFailure({{path, 0, "empty file"}});
  ++lineno;
  const std::string expected_header =
      "researcher_id,university_id,sds_code,uda_code,rank,years_active,"
      "university_type";
  if (line != expected_header)
    throw IngestFailure(
        {{path, 1, "bad header, expected: " + expected_header}});

  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto f = split_csv(line);
    if (f.size() != 7) {
      errors.push_back({path, lineno, "expected 7 fields, got " +
                                          std::to_string(f.size())});
      continue;
    }
    Researcher r;
    r.researcher_id = f[0];
    r.university_id = f[1];
    r.field.sds_code = f[2];
    r.field.uda_code = f[3];
    r.field.life_science = cfg.life_science_udas.count(f[3]) > 0;

    auto rank = parse_rank(f[4]);
    if (!rank) {
      errors.push_back({path, lineno, "unknown rank '" + f[4] + "'"});
      continue;
    }
    r.rank = *rank;

    long long years = 0;
    if (!parse_int(f[5], years)) {
      errors.push_back({path, lineno, "years_active not an integer: " + f[5]});
      continue;
    }
    r.years_active = static_cast<int>(years);

    bool is_public;
    if (f[6] == "PUBLIC") {
      is_public = true;
    } else if (f[6] == "PRIVATE") {
      is_public = false;
    } else {
      errors.push_back({path, lineno, "unknown university_type '" + f[6] + "'"});
      continue;
    }

    for (const auto& v : validate(r, cfg))
      errors.push_back({path, lineno, v.field + ": " + v.message});

    auto [it, inserted] = seen_researcher.emplace(r.researcher_id, lineno);
    if (!inserted) {
      errors.push_back({path, lineno,
                        "duplicate researcher_id '" + r.researcher_id +
                            "' (first seen at line " +
                            std::to_string(it->second) + ")"});
      continue;
    }

    auto [uit, new_uni] = university_public.emplace(r.university_id, is_public);
    if (!new_uni && uit->second != is_public)
      errors.push_back({path, lineno,
                        "university '" + r.university_id +
                            "' has inconsistent university_type"});

    auto [sit, new_sds] = sds_uda.emplace(r.field.sds_code, r.field.uda_code);
    if (!new_sds && sit->second != r.field.uda_code)
      errors.push_back({path, lineno,
                        "sds '" + r.field.sds_code +
                            "' mapped to more than one uda"});

    data.researchers.push_back(std::move(r));
  }

  if (!errors.empty()) throw IngestFailure(std::move(errors));

  for (const auto& [id, is_public] : std::map<std::string, bool>(
           university_public.begin(), university_public.end()))
    data.universities.push_back({id, is_public});
  return data;
}

std::vector<Publication> load_publications(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IngestFailure({{path, 0, "cannot open file"}});

  std::vector<InputError> errors;
  std::vector<Publication> pubs;
  std::unordered_map<std::string, int> seen;  // pub_id -> line
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      errors.push_back({path, lineno, "malformed JSON record"});
      continue;
    }
    Publication p;
    try {
      p.pub_id = j.at("pub_id").get<std::string>();
      p.year = j.at("year").get<int>();
      p.citations = j.at("citations").get<long long>();
      for (const auto& sc : j.at("subject_categories"))
        p.subject_categories.push_back({sc.at("code").get<std::string>(),
                                        sc.at("weight").get<double>()});
      for (const auto& a : j.at("authors")) {
        AuthorSlot slot;
        slot.position = a.at("position").get<int>();
        if (a.contains("researcher_id") && !a["researcher_id"].is_null())
          slot.researcher_id = a["researcher_id"].get<std::string>();
        if (a.contains("university_id") && !a["university_id"].is_null())
          slot.university_id = a["university_id"].get<std::string>();
        p.authors.push_back(std::move(slot));
      }
    } catch (const json::exception& e) {
      errors.push_back({path, lineno, std::string("bad record: ") + e.what()});
      continue;
    }
    for (const auto& v : validate(p))
      errors.push_back({path, lineno, v.field + ": " + v.message});
    auto [it, inserted] = seen.emplace(p.pub_id, lineno);
    if (!inserted) {
      errors.push_back({path, lineno,
                        "duplicate pub_id '" + p.pub_id + "' (first seen at line " +
                            std::to_string(it->second) + ")"});
      continue;
    }
    pubs.push_back(std::move(p));
  }
  if (!errors.empty()) throw IngestFailure(std::move(errors));
  return pubs;
}

AssessmentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IngestFailure({{path, 0, "cannot open file"}});
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IngestFailure({{path, 0, std::string("bad JSON: ") + e.what()}});
  }
  AssessmentConfig cfg;
  if (j.contains("window_start")) cfg.window_start = j["window_start"];
  if (j.contains("window_end")) cfg.window_end = j["window_end"];
  if (j.contains("top_share")) cfg.top_share = j["top_share"];
  if (j.contains("sds_coverage_threshold"))
    cfg.sds_coverage_threshold = j["sds_coverage_threshold"];
  if (j.contains("min_cell_size")) cfg.min_cell_size = j["min_cell_size"];
  if (j.contains("life_science_udas")) {
    cfg.life_science_udas.clear();
    for (const auto& u : j["life_science_udas"])
      cfg.life_science_udas.insert(u.get<std::string>());
  }
  if (j.contains("ls_weights")) {
    const auto& w = j["ls_weights"];
    auto& lw = cfg.ls_weights;
    if (w.contains("same_first_last")) lw.same_first_last = w["same_first_last"];
    if (w.contains("same_rest")) lw.same_rest = w["same_rest"];
    if (w.contains("diff_first_last")) lw.diff_first_last = w["diff_first_last"];
    if (w.contains("diff_second_penultimate"))
      lw.diff_second_penultimate = w["diff_second_penultimate"];
    if (w.contains("diff_rest")) lw.diff_rest = w["diff_rest"];
  }
  std::vector<InputError> errors;
  for (const auto& v : validate(cfg))
    errors.push_back({path, 0, v.field + ": " + v.message});
  if (!errors.empty()) throw IngestFailure(std::move(errors));
  return cfg;
}

void save_config(const AssessmentConfig& cfg, const std::string& path) {
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
  std::ofstream out(path);
  out << j.dump(2) << "\n";
}

std::pair<Corpus, FilterReport> link_and_filter(
    std::vector<Researcher> researchers, std::vector<University> universities,
    std::vector<Publication> publications, const AssessmentConfig& config) {
  FilterReport report;

  std::unordered_set<std::string> roster_ids;
  for (const auto& r : researchers) roster_ids.insert(r.researcher_id);

  // Null author slots pointing outside the roster; they stay in the author
  // list (they still count toward s and the citation baselines).
  for (auto& p : publications)
    for (auto& slot : p.authors)
      if (slot.researcher_id && !roster_ids.count(*slot.researcher_id)) {
        slot.researcher_id.reset();
        ++report.external_slots_nulled;
      }

  // Which researchers published at least once inside the window.
  std::unordered_set<std::string> has_pub;
  for (const auto& p : publications) {
    if (!config.in_window(p.year)) continue;
    for (const auto& slot : p.authors)
      if (slot.researcher_id) has_pub.insert(*slot.researcher_id);
  }

  std::map<std::string, ExcludedSds> excluded_sds;
  std::map<std::pair<std::string, std::string>, ExcludedCell> excluded_cells;

  // Both filters reference population counts that shrink as researchers are
  // dropped, so we iterate to a fixed point; re-running the filter on its own
  // output is then a no-op.
  bool changed = true;
  while (changed && !researchers.empty()) {
    changed = false;

    // SDS coverage: share of researchers with >=1 publication in window.
    std::map<std::string, std::pair<int, int>> sds_counts;  // total, publishing
    for (const auto& r : researchers) {
      auto& c = sds_counts[r.field.sds_code];
      ++c.first;
      if (has_pub.count(r.researcher_id)) ++c.second;
    }
    std::set<std::string> drop_sds;
    for (const auto& [sds, c] : sds_counts) {
      double share = static_cast<double>(c.second) / c.first;
      if (share < config.sds_coverage_threshold) {
        drop_sds.insert(sds);
        std::ostringstream os;
        os << "coverage " << c.second << "/" << c.first << " below threshold";
        excluded_sds.insert({sds, {sds, os.str()}});
      }
    }
    if (!drop_sds.empty()) {
      std::erase_if(researchers, [&](const Researcher& r) {
        return drop_sds.count(r.field.sds_code) > 0;
      });
      changed = true;
      continue;
    }

    // Minimum (university, SDS) cell size.
    std::map<std::pair<std::string, std::string>, int> cell_sizes;
    for (const auto& r : researchers)
      ++cell_sizes[{r.university_id, r.field.sds_code}];
    std::set<std::pair<std::string, std::string>> drop_cells;
    for (const auto& [key, size] : cell_sizes) {
      if (size < config.min_cell_size) {
        drop_cells.insert(key);
        std::ostringstream os;
        os << "cell size " << size << " below minimum " << config.min_cell_size;
        excluded_cells.insert({key, {key.first, key.second, size, os.str()}});
      }
    }
    if (!drop_cells.empty()) {
      std::erase_if(researchers, [&](const Researcher& r) {
        return drop_cells.count({r.university_id, r.field.sds_code}) > 0;
      });
      changed = true;
    }
  }

  if (researchers.empty())
    throw IngestFailure({{"corpus", 0, "empty field of observation after filtering"}});

  std::unordered_set<std::string> kept_unis;
  for (const auto& r : researchers) kept_unis.insert(r.university_id);
  std::erase_if(universities, [&](const University& u) {
    return !kept_unis.count(u.university_id);
  });

  // Slots referencing dropped researchers are nulled too, so a second pass
  // over the output sees the same external-author structure.
  std::unordered_set<std::string> kept_ids;
  for (const auto& r : researchers) kept_ids.insert(r.researcher_id);
  for (auto& p : publications)
    for (auto& slot : p.authors)
      if (slot.researcher_id && !kept_ids.count(*slot.researcher_id))
        slot.researcher_id.reset();

  std::set<std::string> included;
  for (const auto& r : researchers) included.insert(r.field.sds_code);
  report.included_sds.assign(included.begin(), included.end());
  for (auto& [_, e] : excluded_sds) report.excluded_sds.push_back(e);
  for (auto& [_, e] : excluded_cells) report.excluded_cells.push_back(e);
  report.final_researchers = static_cast<int>(researchers.size());
  report.final_universities = static_cast<int>(universities.size());

  Corpus corpus{std::move(universities), std::move(researchers),
                std::move(publications), config};
  return {std::move(corpus), std::move(report)};
}

}  // namespace biblio
