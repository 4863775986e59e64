#pragma once
// Shared helpers for the unit suites: tiny corpus builders and temp files.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "biblio/model.hpp"

namespace testutil {

inline std::string write_temp(const std::string& name,
                              const std::string& content) {
  auto dir = std::filesystem::temp_directory_path() / "biblio_tests";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::ofstream out(path);
  out << content;
  return path.string();
}

inline biblio::Researcher researcher(const std::string& id,
                                     const std::string& uni,
                                     const std::string& sds = "SDS1",
                                     biblio::AcademicRank rank =
                                         biblio::AcademicRank::Full,
                                     int years = 5, bool life = false) {
  biblio::Researcher r;
  r.researcher_id = id;
  r.university_id = uni;
  r.field = {sds, life ? "BIO" : "MAT", life};
  r.rank = rank;
  r.years_active = years;
  return r;
}

inline biblio::Publication publication(
    const std::string& id, int year, long long citations,
    std::vector<biblio::AuthorSlot> authors,
    std::vector<biblio::SubjectWeight> cats = {{"SC1", 1.0}}) {
  biblio::Publication p;
  p.pub_id = id;
  p.year = year;
  p.citations = citations;
  p.subject_categories = std::move(cats);
  p.authors = std::move(authors);
  return p;
}

inline biblio::AuthorSlot slot(int pos, const std::string& rid = "",
                               const std::string& uni = "") {
  biblio::AuthorSlot s;
  s.position = pos;
  if (!rid.empty()) s.researcher_id = rid;
  if (!uni.empty()) s.university_id = uni;
  return s;
}

}  // namespace testutil
