#pragma once

#include "clmatch/graph.hpp"

namespace clmatch {

// Maximum matching via Hopcroft-Karp. Serves as the driver's fallback;
// validated against the brute-force oracle before being trusted.
Matching hopcroft_karp(const BipartiteGraph& g);

} // namespace clmatch
