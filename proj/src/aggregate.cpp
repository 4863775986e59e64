#include "biblio/aggregate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "biblio/kernels.hpp"

namespace biblio {

NationalReference build_reference(const Corpus& corpus, const ScoreSet& scores) {
  NationalReference ref;
  ref.cell_stats = scores.cells;

  std::map<std::string, std::pair<int, int>> counts;  // sds -> (total, unproductive)
  for (const auto& r : corpus.researchers) {
    auto& c = counts[r.field.sds_code];
    ++c.first;
    if (scores.scores.at(r.researcher_id).is_unproductive) ++c.second;
  }
  for (const auto& [sds, c] : counts)
    ref.sds_unproductive_share[sds] =
        static_cast<double>(c.second) / static_cast<double>(c.first);
  return ref;
}

namespace {

// Normalized scores of a university's professors, in researcher_id order.
std::vector<double> normalized_of(const std::string& university_id,
                                  const Corpus& corpus, const ScoreSet& scores) {
  std::vector<std::pair<std::string, double>> members;
  for (const auto& r : corpus.researchers)
    if (r.university_id == university_id)
      members.emplace_back(r.researcher_id,
                           scores.scores.at(r.researcher_id).normalized);
  std::sort(members.begin(), members.end());
  std::vector<double> out;
  out.reserve(members.size());
  for (const auto& [id, v] : members) out.push_back(v);
  return out;
}

}  // namespace

double university_P(const std::string& university_id, const Corpus& corpus,
                    const ScoreSet& scores) {
  auto values = normalized_of(university_id, corpus, scores);
  if (values.empty()) return 0.0;
  return kern::sum(values) / static_cast<double>(values.size());
}

double university_P_excl(const std::string& university_id, const Corpus& corpus,
                         const ScoreSet& scores,
                         std::vector<std::string>* warnings) {
  int n_prod = 0;
  double total = 0.0;
  std::vector<std::pair<std::string, double>> members;
  for (const auto& r : corpus.researchers)
    if (r.university_id == university_id) {
      const auto& s = scores.scores.at(r.researcher_id);
      members.emplace_back(r.researcher_id, s.normalized);
      if (!s.is_unproductive) ++n_prod;
    }
  std::sort(members.begin(), members.end());
  for (const auto& [id, v] : members) total += v;
  if (n_prod == 0) {
    if (warnings)
      warnings->push_back("university " + university_id +
                          " has no productive professors; P_excl set to 0");
    return 0.0;
  }
  return total / n_prod;
}

double nr_index(const std::string& university_id, const Corpus& corpus,
                const ScoreSet& scores, const NationalReference& reference) {
  std::map<std::string, std::pair<int, int>> by_sds;  // (headcount, unproductive)
  int n = 0;
  for (const auto& r : corpus.researchers)
    if (r.university_id == university_id) {
      auto& c = by_sds[r.field.sds_code];
      ++c.first;
      if (scores.scores.at(r.researcher_id).is_unproductive) ++c.second;
      ++n;
    }
  if (n == 0) return 0.0;
  double total = 0.0;
  for (const auto& [sds, c] : by_sds) {
    const double ais = reference.sds_unproductive_share.at(sds);
    if (ais == 0.0) continue;  // no unproductives exist nationally in this SDS
    const double is = static_cast<double>(c.second) / c.first;
    total += (is / ais) * c.first;
  }
  return total / n;
}

double tr_index(const std::string& university_id, const Corpus& corpus,
                const ScoreSet& scores) {
  int n = 0, tops = 0;
  for (const auto& r : corpus.researchers)
    if (r.university_id == university_id) {
      ++n;
      if (scores.scores.at(r.researcher_id).is_top) ++tops;
    }
  return n == 0 ? 0.0 : static_cast<double>(tops) / n;
}

std::array<int, 4> quartile_block_sizes(int n) {
  const int base = n / 4;
  const int rem = n % 4;
  std::array<int, 4> sizes{};  // index 0 = best quartile (coded 4)
  for (int i = 0; i < 4; ++i) sizes[i] = base + (i < rem ? 1 : 0);
  return sizes;
}

RankingList build_ranking(const std::map<std::string, double>& values,
                          const std::string& metric) {
  RankingList list;
  list.metric = metric;
  for (const auto& [id, v] : values) list.entries.push_back({id, v, 0, 0});
  std::sort(list.entries.begin(), list.entries.end(),
            [](const RankingEntry& a, const RankingEntry& b) {
              if (a.value != b.value) return a.value > b.value;
              return a.university_id < b.university_id;
            });

  const int n = static_cast<int>(list.entries.size());
  const auto sizes = quartile_block_sizes(n);
  const std::array<int, 4> bounds{sizes[0], sizes[0] + sizes[1],
                                  sizes[0] + sizes[1] + sizes[2], n};

  auto quartile_of_rank = [&](int rank) {
    for (int q = 0; q < 4; ++q)
      if (rank <= bounds[q]) return 4 - q;
    return 1;
  };

  for (int i = 0; i < n; ++i) {
    if (i > 0 && list.entries[i].value == list.entries[i - 1].value)
      list.entries[i].rank = list.entries[i - 1].rank;
    else
      list.entries[i].rank = i + 1;
    // A tie group straddling a boundary takes the better quartile.
    list.entries[i].quartile = quartile_of_rank(list.entries[i].rank);
  }
  return list;
}

std::vector<UniversityIndicators> compute_indicators(
    const Corpus& corpus, const ScoreSet& scores,
    const NationalReference& reference, std::vector<std::string>* warnings) {
  std::map<std::string, UniversityIndicators> by_id;
  std::map<std::string, int> headcount;
  for (const auto& r : corpus.researchers) ++headcount[r.university_id];

  std::map<std::string, double> p_values, p_excl_values;
  for (const auto& u : corpus.universities) {
    UniversityIndicators ind;
    ind.university_id = u.university_id;
    ind.n = headcount[u.university_id];
    ind.P = university_P(u.university_id, corpus, scores);
    ind.P_excl = university_P_excl(u.university_id, corpus, scores, warnings);
    ind.NR = nr_index(u.university_id, corpus, scores, reference);
    ind.TR = tr_index(u.university_id, corpus, scores);
    p_values[u.university_id] = ind.P;
    p_excl_values[u.university_id] = ind.P_excl;
    by_id.emplace(u.university_id, std::move(ind));
  }

  const RankingList rank_p = build_ranking(p_values, "P");
  const RankingList rank_pe = build_ranking(p_excl_values, "P_excl");
  for (const auto& e : rank_p.entries) {
    by_id[e.university_id].rank_P = e.rank;
    by_id[e.university_id].quartile_P = e.quartile;
  }
  for (const auto& e : rank_pe.entries) {
    by_id[e.university_id].rank_P_excl = e.rank;
    by_id[e.university_id].quartile_P_excl = e.quartile;
  }

  std::vector<UniversityIndicators> out;
  out.reserve(by_id.size());
  for (auto& [id, ind] : by_id) out.push_back(std::move(ind));
  return out;
}

}  // namespace biblio
