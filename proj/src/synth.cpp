#include "biblio/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace biblio {

namespace {

// Thin wrapper with explicit transforms so the byte stream depends only on
// the seed, not on library distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }
  int uniform_int(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(uniform() * (hi - lo + 1));
  }
  double normal(double mu, double sigma) {
    if (have_spare_) {
      have_spare_ = false;
      return mu + sigma * spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return mu + sigma * r * std::cos(theta);
  }
  int poisson(double lambda) {
    // inversion; fine for the small means used here
    const double l = std::exp(-lambda);
    int k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform();
    } while (p > l);
    return k - 1;
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

std::string fmt(const char* f, int v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

struct SynthResearcher {
  std::string id;
  int uni_index = 0;
  std::string university_id;
  SynthSdsSpec sds;
  AcademicRank rank = AcademicRank::Assistant;
  int years_active = 0;
  bool life_science = false;
};

}  // namespace

SynthSpec synth_preset(const std::string& name, std::uint64_t seed) {
  SynthSpec s;
  s.name = name;
  s.seed = seed;
  const std::vector<SynthSdsSpec> national_sds = {
      {"MAT03", "MAT", 8}, {"FIS01", "FIS", 8},   {"BIO10", "BIO", 9},
      {"MED04", "MED", 9}, {"ING-INF05", "ING", 8}, {"CHIM02", "CHIM", 7},
  };
  if (name == "noncompetitive-IT") {
    s.universities = 30;
    s.sds = national_sds;
    s.tilt = 0.15;
  } else if (name == "competitive") {
    s.universities = 30;
    s.sds = national_sds;
    s.tilt = 1.0;
  } else if (name == "tiny-oracle") {
    s.universities = 2;
    s.sds = {{"MAT03", "MAT", 5}, {"BIO10", "BIO", 5}};
    s.unproductive_prob = 0.15;
    s.pub_rate = 0.5;
    s.tilt = 0.0;
  } else {
    throw std::invalid_argument("unknown preset '" + name + "'");
  }
  return s;
}

void generate(const SynthSpec& spec, const std::string& roster_path,
              const std::string& pubs_path) {
  if (spec.sds.empty()) throw std::invalid_argument("spec has no SDSs");
  if (spec.universities < 1)
    throw std::invalid_argument("spec needs at least one university");
  const double mix_sum =
      spec.rank_mix[0] + spec.rank_mix[1] + spec.rank_mix[2];
  if (std::fabs(mix_sum - 1.0) > 1e-9)
    throw std::invalid_argument("rank_mix must sum to 1");

  Rng rng(spec.seed);
  const AssessmentConfig& cfg = spec.config;
  const bool tiny = spec.name == "tiny-oracle";

  std::vector<std::string> uni_ids;
  std::vector<bool> uni_public;
  std::vector<double> uni_quality;  // -1 (weak) .. +1 (strong)
  for (int u = 0; u < spec.universities; ++u) {
    uni_ids.push_back("U" + fmt("%03d", u + 1));
    uni_public.push_back(rng.uniform() < spec.public_share);
    uni_quality.push_back(
        spec.universities > 1
            ? 2.0 * u / (spec.universities - 1) - 1.0
            : 0.0);
  }

  std::vector<SynthResearcher> roster;
  for (int u = 0; u < spec.universities; ++u) {
    for (const auto& sds : spec.sds) {
      for (int i = 0; i < sds.per_university; ++i) {
        SynthResearcher r;
        r.id = "R" + fmt("%05d", static_cast<int>(roster.size()) + 1);
        r.uni_index = u;
        r.university_id = uni_ids[u];
        r.sds = sds;
        r.life_science = cfg.life_science_udas.count(sds.uda_code) > 0;
        const double d = rng.uniform();
        r.rank = d < spec.rank_mix[0] ? AcademicRank::Full
                 : d < spec.rank_mix[0] + spec.rank_mix[1]
                     ? AcademicRank::Associate
                     : AcademicRank::Assistant;
        r.years_active = rng.uniform_int(3, cfg.window_length());
        roster.push_back(std::move(r));
      }
    }
  }

  std::ofstream rf(roster_path);
  rf << "researcher_id,university_id,sds_code,uda_code,rank,years_active,"
        "university_type\n";
  for (const auto& r : roster)
    rf << r.id << ',' << r.university_id << ',' << r.sds.sds_code << ','
       << r.sds.uda_code << ',' << to_string(r.rank) << ',' << r.years_active
       << ',' << (uni_public[r.uni_index] ? "PUBLIC" : "PRIVATE") << '\n';

  // Productivity flags drawn up front so co-author sampling can stay inside
  // the productive subset (an unproductive professor must not be rescued by a
  // random co-authorship).
  std::vector<bool> productive(roster.size());
  std::vector<std::size_t> productive_idx;
  for (std::size_t ri = 0; ri < roster.size(); ++ri) {
    const double q = uni_quality[roster[ri].uni_index];
    const double unprod =
        std::clamp(spec.unproductive_prob * (1.0 - 0.8 * spec.tilt * q), 0.01,
                   0.95);
    productive[ri] = rng.uniform() >= unprod;
    if (productive[ri]) productive_idx.push_back(ri);
  }

  std::ofstream pf(pubs_path);
  int pub_seq = 0;
  char wbuf[32];

  for (std::size_t ri = 0; ri < roster.size(); ++ri) {
    const auto& r = roster[ri];
    const double q = uni_quality[r.uni_index];
    if (!productive[ri]) continue;

    int npubs = 1 + rng.poisson(spec.pub_rate * std::exp(0.3 * spec.tilt * q));
    if (tiny) npubs = std::min(npubs, 2);

    for (int pi = 0; pi < npubs; ++pi) {
      ++pub_seq;
      const int year = cfg.window_start + rng.uniform_int(0, cfg.window_length() - 1);
      long long citations = 0;
      if (rng.uniform() >= spec.uncited_prob) {
        const double raw = std::exp(
            rng.normal(spec.lognorm_mu + 0.5 * spec.tilt * q, spec.lognorm_sigma));
        citations = 1 + std::min<long long>(static_cast<long long>(raw), 500);
      }

      // subject categories: own SDS, sometimes blended with another
      std::vector<std::pair<std::string, double>> cats;
      const std::string own_cat = "SC_" + r.sds.sds_code;
      if (spec.sds.size() > 1 && rng.uniform() < 0.25) {
        std::string other =
            "SC_" + spec.sds[rng.uniform_int(0, static_cast<int>(spec.sds.size()) - 1)]
                        .sds_code;
        if (other != own_cat) {
          cats = {{own_cat, 0.6}, {other, 0.4}};
        }
      }
      if (cats.empty()) cats = {{own_cat, 1.0}};

      const int s = r.life_science ? rng.uniform_int(3, 9) : rng.uniform_int(1, 5);
      const int own_pos = rng.uniform_int(1, s);

      // optional second roster co-author
      int co_pos = 0;
      const SynthResearcher* co = nullptr;
      if (s >= 2 && rng.uniform() < spec.roster_coauthor_prob) {
        const auto& cand = roster[productive_idx[static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<int>(productive_idx.size()) - 1))]];
        if (cand.id != r.id) {
          co = &cand;
          co_pos = rng.uniform_int(1, s);
          if (co_pos == own_pos) co_pos = own_pos == s ? 1 : own_pos + 1;
        }
      }

      std::ostringstream authors;
      for (int pos = 1; pos <= s; ++pos) {
        if (pos > 1) authors << ',';
        if (pos == own_pos) {
          authors << R"({"position":)" << pos << R"(,"researcher_id":")" << r.id
                  << R"(","university_id":")" << r.university_id << R"("})";
        } else if (co && pos == co_pos) {
          authors << R"({"position":)" << pos << R"(,"researcher_id":")"
                  << co->id << R"(","university_id":")" << co->university_id
                  << R"("})";
        } else {
          const double kind = rng.uniform();
          if (kind < 0.5) {
            authors << R"({"position":)" << pos << R"(,"university_id":")"
                    << uni_ids[rng.uniform_int(0, spec.universities - 1)]
                    << R"("})";
          } else if (kind < 0.8) {
            authors << R"({"position":)" << pos << R"(,"university_id":"EXT)"
                    << rng.uniform_int(1, 99) << R"("})";
          } else {
            authors << R"({"position":)" << pos << "}";
          }
        }
      }

      pf << R"({"pub_id":"P)" << fmt("%06d", pub_seq) << R"(","year":)" << year
         << R"(,"citations":)" << citations << R"(,"subject_categories":[)";
      for (std::size_t c = 0; c < cats.size(); ++c) {
        if (c) pf << ',';
        std::snprintf(wbuf, sizeof(wbuf), "%g", cats[c].second);
        pf << R"({"code":")" << cats[c].first << R"(","weight":)" << wbuf << "}";
      }
      pf << R"(],"authors":[)" << authors.str() << "]}\n";
    }
  }
}

}  // namespace biblio
