#pragma once
// Seeded generator for realistic national systems. Output is written in
// the exact ingest formats and is byte-identical for a fixed spec and seed.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "biblio/model.hpp"

namespace biblio {

struct SynthSdsSpec {
  std::string sds_code;
  std::string uda_code;
  int per_university = 8;  // professors per (university, SDS) cell
};

struct SynthSpec {
  std::string name = "custom";
  std::uint64_t seed = 1;
  int universities = 30;
  double public_share = 0.85;
  std::vector<SynthSdsSpec> sds;
  std::array<double, 3> rank_mix = {0.3, 0.35, 0.35};  // full/assoc/assistant
  double unproductive_prob = 0.14;  // chance a professor publishes nothing
  double uncited_prob = 0.30;       // per-publication chance of 0 citations
  double pub_rate = 3.0;            // Poisson mean extra publications
  double lognorm_mu = 1.2;          // citation count location (log scale)
  double lognorm_sigma = 1.0;       // citation count scale
  // 0 = uniform system; larger values concentrate productivity and
  // unproductives by university, emulating a competitive system.
  double tilt = 0.0;
  double roster_coauthor_prob = 0.15;
  AssessmentConfig config;
};

// Presets: "noncompetitive-IT", "competitive", "tiny-oracle".
SynthSpec synth_preset(const std::string& name, std::uint64_t seed);

// Writes roster and publication files; throws std::invalid_argument on an
// infeasible spec.
void generate(const SynthSpec& spec, const std::string& roster_path,
              const std::string& pubs_path);

}  // namespace biblio
