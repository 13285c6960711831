#pragma once

#include <cstdint>
#include <vector>

#include "clmatch/driver.hpp"

namespace clmatch {

struct WeightedResult {
    Matching matching;
    std::int64_t input_weight = 0;
    RunReport report;
};

// Scale factor K for the combined weights K*input + catalytic: one unit of
// input weight must outweigh the largest total the catalytic fields can sum
// to, so K = |E| * (2^b - 1) + 1.
std::int64_t input_scale_for(const BipartiteGraph& g, const TapeLayout& layout);

// Maximum matching of minimum total input weight, computed catalytically.
// The driver runs on the combined weights; since the input part dominates,
// every isolated matching it grows is min-input-weight within its size class,
// and compression erases only the catalytic component of a field. The
// fallback (budget exhausted or forced) switches to a direct exhaustive scan,
// so both routes return a min-weight maximum matching.
WeightedResult min_weight_max_matching(const BipartiteGraph& g,
                                       const std::vector<std::int64_t>& input_w,
                                       CatalyticTape& tape, DriverConfig cfg = {});

} // namespace clmatch
