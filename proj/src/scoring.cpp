#include "biblio/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "biblio/kernels.hpp"

namespace biblio {

namespace {

double median_sorted(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

BaselineMap compute_baselines(const std::vector<Publication>& pubs) {
  std::map<std::pair<int, std::string>, std::vector<double>> cited;
  for (const auto& p : pubs) {
    if (p.citations < 1) continue;
    for (const auto& sc : p.subject_categories)
      cited[{p.year, sc.code}].push_back(static_cast<double>(p.citations));
  }
  BaselineMap out;
  for (auto& [key, values] : cited) out[key] = median_sorted(values);
  return out;
}

std::map<int, double> compute_year_fallbacks(
    const std::vector<Publication>& pubs) {
  std::map<int, std::vector<double>> cited;
  for (const auto& p : pubs)
    if (p.citations >= 1)
      cited[p.year].push_back(static_cast<double>(p.citations));
  std::map<int, double> out;
  for (auto& [year, values] : cited) out[year] = median_sorted(values);
  return out;
}

double standardized_impact(const Publication& pub, const BaselineMap& baselines,
                           const std::map<int, double>& year_fallback,
                           std::vector<std::string>* warnings) {
  if (pub.citations == 0) return 0.0;
  double total = 0.0;
  for (const auto& sc : pub.subject_categories) {
    double me;
    auto it = baselines.find({pub.year, sc.code});
    if (it != baselines.end()) {
      me = it->second;
    } else {
      // No cited publication in this year x category; fall back to the
      // all-category median of the year. A cited publication guarantees the
      // year pool is nonempty.
      me = year_fallback.at(pub.year);
      if (warnings) {
        std::ostringstream os;
        os << "no baseline for (" << pub.year << ", " << sc.code
           << "); using year median " << me << " for " << pub.pub_id;
        warnings->push_back(os.str());
      }
    }
    total += sc.weight * (static_cast<double>(pub.citations) / me);
  }
  return total;
}

double author_share(const Publication& pub, std::size_t slot_index,
                    const AssessmentConfig& config, bool life_science) {
  const int s = static_cast<int>(pub.authors.size());
  if (!life_science || s <= 2) return 1.0 / s;

  const auto& w = config.ls_weights;
  const int pos = pub.authors[slot_index].position;

  std::optional<std::string> first_uni, last_uni;
  for (const auto& a : pub.authors) {
    if (a.position == 1) first_uni = a.university_id;
    if (a.position == s) last_uni = a.university_id;
  }
  // Null affiliations count as different universities.
  const bool same = first_uni && last_uni && *first_uni == *last_uni;

  if (same) {
    if (pos == 1 || pos == s) return w.same_first_last;
    return w.same_rest / (s - 2);
  }
  if (pos == 1 || pos == s) return w.diff_first_last;
  const double leftover = 1.0 - 2.0 * w.diff_first_last;
  if (s == 3) return leftover;  // the single middle author takes the rest
  if (s == 4) return leftover / 2.0;
  if (pos == 2 || pos == s - 1) return w.diff_second_penultimate;
  return w.diff_rest / (s - 4);
}

double researcher_productivity(
    const Researcher& researcher,
    const std::vector<std::pair<const Publication*, std::size_t>>& slots,
    const BaselineMap& baselines, const std::map<int, double>& year_fallback,
    const AssessmentConfig& config) {
  double total = 0.0;
  for (const auto& [pub, slot_index] : slots)
    total += standardized_impact(*pub, baselines, year_fallback) *
             author_share(*pub, slot_index, config, researcher.field.life_science);
  return total / researcher.years_active;
}

std::map<std::string, double> compute_productivities(
    const Corpus& corpus, const BaselineMap& baselines,
    const std::map<int, double>& year_fallback, int jobs,
    std::vector<std::string>* warnings) {
  const auto& pubs = corpus.publications;

  // Impact per publication, computed once; warning order follows pub order.
  std::vector<double> impact(pubs.size(), 0.0);
  for (std::size_t i = 0; i < pubs.size(); ++i)
    impact[i] = standardized_impact(pubs[i], baselines, year_fallback, warnings);

  // researcher -> (pub index, slot index) for window publications
  std::unordered_map<std::string, std::vector<std::pair<std::size_t, std::size_t>>>
      by_researcher;
  for (std::size_t i = 0; i < pubs.size(); ++i) {
    if (!corpus.config.in_window(pubs[i].year)) continue;
    for (std::size_t k = 0; k < pubs[i].authors.size(); ++k)
      if (pubs[i].authors[k].researcher_id)
        by_researcher[*pubs[i].authors[k].researcher_id].emplace_back(i, k);
  }

  const auto& researchers = corpus.researchers;
  std::vector<double> p(researchers.size(), 0.0);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const auto& res = researchers[r];
      auto it = by_researcher.find(res.researcher_id);
      if (it == by_researcher.end()) continue;
      double total = 0.0;
      for (const auto& [pi, si] : it->second)
        total += impact[pi] *
                 author_share(pubs[pi], si, corpus.config, res.field.life_science);
      p[r] = total / res.years_active;
    }
  };

  const int nthreads = std::max(1, jobs);
  if (nthreads == 1 || researchers.size() < 256) {
    work(0, researchers.size());
  } else {
    // Static partition; each slot is written by exactly one thread, so the
    // result does not depend on the thread count.
    std::vector<std::thread> threads;
    const std::size_t chunk = (researchers.size() + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
      std::size_t begin = t * chunk;
      std::size_t end = std::min(researchers.size(), begin + chunk);
      if (begin >= end) break;
      threads.emplace_back(work, begin, end);
    }
    for (auto& t : threads) t.join();
  }

  std::map<std::string, double> out;
  for (std::size_t r = 0; r < researchers.size(); ++r)
    out[researchers[r].researcher_id] = p[r];
  return out;
}

ScoreSet score_cells(const Corpus& corpus,
                     const std::map<std::string, double>& p_values) {
  ScoreSet out;

  // Members per cell, in researcher_id order for reproducible reductions.
  std::map<CellKey, std::vector<std::pair<std::string, double>>> cells;
  for (const auto& r : corpus.researchers) {
    CellKey key{r.field.sds_code, r.rank};
    cells[key].emplace_back(r.researcher_id, p_values.at(r.researcher_id));
  }

  for (auto& [key, members] : cells) {
    std::sort(members.begin(), members.end());
    const int n = static_cast<int>(members.size());

    std::vector<double> ps;
    ps.reserve(members.size());
    for (const auto& [id, p] : members) ps.push_back(p);
    const double ap = kern::sum(ps) / n;

    std::vector<double> sorted = ps;
    std::sort(sorted.begin(), sorted.end());

    const int k = std::max(
        1, static_cast<int>(std::floor(corpus.config.top_share * n)));
    const double cutoff = sorted[n - k];  // p of the k-th best member

    out.cells[key] = CellStats{key, n, ap, cutoff};
    if (ap == 0.0) {
      std::ostringstream os;
      os << "cell (" << key.sds_code << ", " << to_string(key.rank)
         << ") has Ap = 0; normalized scores set to 0";
      out.warnings.push_back(os.str());
    }

    for (const auto& [id, p] : members) {
      ResearcherScore score;
      score.researcher_id = id;
      score.p = p;
      score.normalized = (ap > 0.0) ? p / ap : 0.0;
      if (n == 1) {
        score.percentile = 50.0;
      } else {
        auto lo = std::lower_bound(sorted.begin(), sorted.end(), p);
        auto hi = std::upper_bound(sorted.begin(), sorted.end(), p);
        const double smaller = static_cast<double>(lo - sorted.begin());
        const double tied_peers = static_cast<double>(hi - lo) - 1.0;
        score.percentile =
            std::clamp(100.0 * (smaller + 0.5 * tied_peers) / (n - 1), 0.0, 100.0);
      }
      score.is_unproductive = (p == 0.0);
      // Ties at the cutoff are all included; zeros never qualify.
      score.is_top = (p >= cutoff && p > 0.0);
      out.scores.emplace(id, std::move(score));
    }
  }
  return out;
}

}  // namespace biblio
