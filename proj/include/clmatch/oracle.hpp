#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "clmatch/graph.hpp"

namespace clmatch {
namespace oracle {

// Brute force refuses larger instances; enumeration is the ground truth and
// must stay obviously correct, not fast.
inline constexpr int kMaxOracleN = 8;

struct SizeClassReport {
    int k = 0;
    std::int64_t matching_count = 0;          // all matchings of size k
    std::optional<std::int64_t> min_weight;   // nullopt when no size-k matching exists
    std::int64_t min_count = 0;               // matchings attaining min_weight
    std::vector<Matching> min_matchings;      // all of them, canonical order
    bool isolated = false;                    // min_count == 1
};

struct OracleReport {
    int max_size = 0;
    std::vector<SizeClassReport> by_size;     // index k = 0..n
    std::vector<Matching> all_matchings;      // filled only when requested
};

// Enumerates every matching of g. If only_k is set, weight statistics are
// still gathered for all sizes (enumeration visits them anyway) but callers
// use it to express intent. keep_all stores the full enumeration in the report.
OracleReport brute_force_matchings(const BipartiteGraph& g, const std::vector<std::int64_t>& w,
                                   bool keep_all = false);

// True iff exactly one minimum-weight matching of size k exists.
bool is_isolating(const BipartiteGraph& g, int k, const std::vector<std::int64_t>& w);

// Unique minimum-weight size-k matching; nullopt when absent or not unique.
std::optional<Matching> unique_min_matching(const BipartiteGraph& g, int k,
                                            const std::vector<std::int64_t>& w);

int max_matching_size(const BipartiteGraph& g);

// Minimum total weight among maximum-size matchings, with one argmin.
std::pair<std::int64_t, Matching> min_weight_max_matching_exhaustive(
    const BipartiteGraph& g, const std::vector<std::int64_t>& w);

} // namespace oracle
} // namespace clmatch
