#include "biblio/model.hpp"

#include "doctest.h"
#include "test_util.hpp"

using namespace biblio;
using namespace testutil;

TEST_CASE("publication validation") {
  AssessmentConfig cfg;

  SUBCASE("weights 0.6/0.4 are valid") {
    auto p = publication("P1", 2005, 3, {slot(1)}, {{"A", 0.6}, {"B", 0.4}});
    CHECK(validate(p).empty());
  }
  SUBCASE("zero authors is a violation") {
    auto p = publication("P1", 2005, 3, {});
    auto v = validate(p);
    REQUIRE(!v.empty());
    bool found = false;
    for (const auto& viol : v) found |= (viol.field == "authors");
    CHECK(found);
  }
  SUBCASE("weight sum 0.9 is a violation") {
    auto p = publication("P1", 2005, 3, {slot(1)}, {{"A", 0.5}, {"B", 0.4}});
    CHECK(!validate(p).empty());
  }
  SUBCASE("duplicate author position is a violation") {
    auto p = publication("P1", 2005, 3, {slot(1), slot(1)});
    CHECK(!validate(p).empty());
  }
  SUBCASE("negative citations is a violation") {
    auto p = publication("P1", 2005, -1, {slot(1)});
    CHECK(!validate(p).empty());
  }
}

TEST_CASE("researcher validation") {
  AssessmentConfig cfg;
  auto r = researcher("R1", "U1");
  CHECK(validate(r, cfg).empty());

  r.years_active = 0;
  auto v = validate(r, cfg);
  REQUIRE(!v.empty());
  CHECK(v[0].rule == "years_active >= 1");

  r.years_active = cfg.window_length() + 1;
  CHECK(!validate(r, cfg).empty());
}

TEST_CASE("rank names round-trip") {
  for (auto r : {AcademicRank::Full, AcademicRank::Associate,
                 AcademicRank::Assistant})
    CHECK(parse_rank(to_string(r)) == r);
  CHECK(!parse_rank("PROF").has_value());
}

TEST_CASE("score flag consistency is enforced") {
  ResearcherScore s;
  s.researcher_id = "R1";
  s.p = 0.0;
  s.is_unproductive = true;
  CHECK(validate(s).empty());

  s.is_top = true;  // top but unproductive
  CHECK(!validate(s).empty());

  s = {};
  s.p = 1.0;
  s.is_unproductive = true;  // inconsistent with p > 0
  CHECK(!validate(s).empty());
}

TEST_CASE("config weight rows must sum to 1") {
  AssessmentConfig cfg;
  CHECK(validate(cfg).empty());

  cfg.ls_weights.same_rest = 0.3;
  CHECK(!validate(cfg).empty());

  cfg = {};
  cfg.top_share = 1.0;
  CHECK(!validate(cfg).empty());
}

TEST_CASE("citation baseline below 1 is rejected") {
  CitationBaseline b{2005, "A", 0.5};
  CHECK(!validate(b).empty());
  b.median_cited_only = 1.0;
  CHECK(validate(b).empty());
}
