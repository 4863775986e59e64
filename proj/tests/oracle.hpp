#pragma once
// Deliberately naive reference implementation of the whole scoring chain,
// written as direct nested loops with no shared code, caching or kernels.
// The acceptance suite compares it against the production pipeline.

#include <map>
#include <string>

#include "biblio/ingest.hpp"

namespace oracle {

struct Result {
  std::map<std::string, double> p;  // researcher -> yearly productivity
  std::map<std::string, bool> unproductive;
  std::map<std::string, bool> top;
  // university -> indicator
  std::map<std::string, double> P, P_excl, NR, TR;
};

Result evaluate(const biblio::Corpus& corpus);

}  // namespace oracle
