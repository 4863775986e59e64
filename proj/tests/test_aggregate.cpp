#include "biblio/aggregate.hpp"

#include <random>

#include "doctest.h"
#include "test_util.hpp"

using namespace biblio;
using namespace testutil;

namespace {

// Corpus where researcher i of university u gets one single-author
// publication with the given citation count (negative = no publication).
Corpus corpus_of(const std::vector<std::pair<std::string, double>>& members,
                 const std::string& sds = "SDS1") {
  Corpus c;
  c.config = AssessmentConfig{};
  std::set<std::string> unis;
  for (std::size_t i = 0; i < members.size(); ++i) {
    auto id = "R" + std::to_string(i);
    const auto& uni = members[i].first;
    unis.insert(uni);
    c.researchers.push_back(researcher(id, uni, sds));
    if (members[i].second >= 0)
      c.publications.push_back(
          publication("P" + std::to_string(i), 2005,
                      static_cast<long long>(members[i].second),
                      {slot(1, id, uni)}));
  }
  for (const auto& u : unis) c.universities.push_back({u, true});
  return c;
}

ScoreSet score(const Corpus& c) {
  auto baselines = compute_baselines(c.publications);
  auto fallback = compute_year_fallbacks(c.publications);
  auto p = compute_productivities(c, baselines, fallback);
  return score_cells(c, p);
}

}  // namespace

TEST_CASE("university_P and P_excl") {
  SUBCASE("one productive at twice the average, one unproductive") {
    // cell {p, 0} has Ap = p/2, so normalized = {2, 0}
    auto c = corpus_of({{"U1", 4.0}, {"U1", -1.0}});
    auto s = score(c);
    CHECK(university_P("U1", c, s) == doctest::Approx(1.0));
    CHECK(university_P_excl("U1", c, s) == doctest::Approx(2.0));
  }
  SUBCASE("no unproductive professors: P_excl equals P") {
    auto c = corpus_of({{"U1", 2.0}, {"U1", 6.0}});
    auto s = score(c);
    CHECK(university_P_excl("U1", c, s) ==
          doctest::Approx(university_P("U1", c, s)));
  }
  SUBCASE("all unproductive: P_excl 0 with warning") {
    auto c = corpus_of({{"U1", -1.0}, {"U1", -1.0}});
    auto s = score(c);
    std::vector<std::string> warnings;
    CHECK(university_P_excl("U1", c, s, &warnings) == 0.0);
    CHECK(warnings.size() == 1);
    CHECK(university_P("U1", c, s) == 0.0);
  }
}

TEST_CASE("nr_index hand example") {
  // University U: SDS A with 10 professors (2 unproductive, national share
  // 0.25), SDS B with 5 professors (2 unproductive, national share 0.2).
  Corpus c;
  c.config = AssessmentConfig{};
  c.universities = {{"U", true}};
  ScoreSet s;
  auto add = [&](const std::string& sds, int n, int unprod) {
    for (int i = 0; i < n; ++i) {
      auto id = sds + std::to_string(i);
      c.researchers.push_back(researcher(id, "U", sds));
      ResearcherScore sc;
      sc.researcher_id = id;
      sc.p = i < unprod ? 0.0 : 1.0;
      sc.is_unproductive = i < unprod;
      s.scores.emplace(id, sc);
    }
  };
  add("A", 10, 2);
  add("B", 5, 2);
  NationalReference ref;
  ref.sds_unproductive_share = {{"A", 0.25}, {"B", 0.2}};
  CHECK(nr_index("U", c, s, ref) == doctest::Approx(1.2));

  SUBCASE("matching national shares give NR = 1") {
    ref.sds_unproductive_share = {{"A", 0.2}, {"B", 0.4}};
    CHECK(nr_index("U", c, s, ref) == doctest::Approx(1.0));
  }
  SUBCASE("no unproductives give NR = 0") {
    for (auto& [id, sc] : s.scores) {
      sc.p = 1.0;
      sc.is_unproductive = false;
    }
    CHECK(nr_index("U", c, s, ref) == doctest::Approx(0.0));
  }
  SUBCASE("SDSs with zero national share contribute nothing") {
    ref.sds_unproductive_share = {{"A", 0.25}, {"B", 0.0}};
    CHECK(nr_index("U", c, s, ref) == doctest::Approx(0.8 * 10 / 15.0));
  }
}

TEST_CASE("tr_index") {
  auto c = corpus_of({{"U1", 1}, {"U1", 2}, {"U1", 3}, {"U1", 4}, {"U1", 5},
                      {"U1", 6}, {"U1", 7}, {"U1", 8}, {"U1", 9}, {"U1", 10}});
  auto s = score(c);
  CHECK(tr_index("U1", c, s) == doctest::Approx(0.2));  // 2 tops of 10
}

TEST_CASE("build_ranking") {
  SUBCASE("four distinct values get quartiles 4,3,2,1") {
    auto list = build_ranking({{"A", 4.0}, {"B", 3.0}, {"C", 2.0}, {"D", 1.0}},
                              "P");
    REQUIRE(list.entries.size() == 4);
    for (int i = 0; i < 4; ++i) {
      CHECK(list.entries[i].rank == i + 1);
      CHECK(list.entries[i].quartile == 4 - i);
    }
    CHECK(list.entries[0].university_id == "A");
  }
  SUBCASE("total tie: all rank 1, all quartile 4") {
    auto list = build_ranking({{"A", 1.0}, {"B", 1.0}, {"C", 1.0}, {"D", 1.0}},
                              "P");
    for (const auto& e : list.entries) {
      CHECK(e.rank == 1);
      CHECK(e.quartile == 4);
    }
  }
  SUBCASE("65 universities split 17,16,16,16") {
    CHECK(quartile_block_sizes(65) == std::array<int, 4>{17, 16, 16, 16});
    std::map<std::string, double> values;
    for (int i = 0; i < 65; ++i) {
      char id[8];
      std::snprintf(id, sizeof(id), "U%02d", i);
      values[id] = 100.0 - i;
    }
    auto list = build_ranking(values, "P");
    std::array<int, 4> counts{};
    for (const auto& e : list.entries) ++counts[4 - e.quartile];
    CHECK(counts == std::array<int, 4>{17, 16, 16, 16});
  }
  SUBCASE("competition ranking skips after ties, deterministic tie-break") {
    auto list = build_ranking(
        {{"A", 5.0}, {"B", 5.0}, {"C", 3.0}, {"D", 1.0}}, "P");
    CHECK(list.entries[0].rank == 1);
    CHECK(list.entries[1].rank == 1);
    CHECK(list.entries[2].rank == 3);
    CHECK(list.entries[0].university_id == "A");  // id breaks the tie order
  }
}

TEST_CASE("national weighted-mean identities on a random corpus") {
  std::mt19937_64 rng(23);
  std::vector<std::pair<std::string, double>> members;
  for (int u = 0; u < 6; ++u)
    for (int i = 0; i < 12; ++i) {
      // every university keeps some unproductives so %AIS > 0 everywhere
      const double cites =
          (i < 2) ? -1.0 : static_cast<double>(rng() % 30);
      members.push_back({"U" + std::to_string(u), cites});
    }
  auto c = corpus_of(members);
  auto s = score(c);
  auto ref = build_reference(c, s);
  std::vector<std::string> warnings;
  auto inds = compute_indicators(c, s, ref, &warnings);

  double np = 0.0, nn = 0.0, n_total = 0.0, top_total = 0.0;
  for (const auto& ind : inds) {
    np += ind.n * ind.P;
    nn += ind.n * ind.NR;
    n_total += ind.n;
    top_total += ind.TR * ind.n;
    CHECK(ind.P_excl >= ind.P - 1e-12);
  }
  CHECK(np / n_total == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(nn / n_total == doctest::Approx(1.0).epsilon(1e-9));

  int national_tops = 0;
  for (const auto& [id, sc] : s.scores) national_tops += sc.is_top;
  CHECK(top_total == doctest::Approx(national_tops));
}

TEST_CASE("P_excl equals P exactly when no unproductives") {
  auto c = corpus_of({{"U1", 5.0}, {"U1", 2.0}, {"U2", -1.0}, {"U2", 3.0}});
  auto s = score(c);
  auto ref = build_reference(c, s);
  auto inds = compute_indicators(c, s, ref);
  for (const auto& ind : inds) {
    int unprod = 0;
    for (const auto& r : c.researchers)
      if (r.university_id == ind.university_id &&
          s.scores.at(r.researcher_id).is_unproductive)
        ++unprod;
    if (unprod == 0)
      CHECK(ind.P_excl == doctest::Approx(ind.P));
    else
      CHECK(ind.P_excl > ind.P);
  }
}
