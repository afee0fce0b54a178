#pragma once

#include <cstdint>

#include "ooc/core.hpp"

namespace ooc {

struct SearchOptions {
    std::int64_t node_budget = 100'000'000;
    // Stop as soon as jstar(u,v) is reached when (k,t) = (4,3).
    bool use_jstar = true;
    // At the root, branch on one block per class under row permutations and
    // unit multipliers of Z_v.
    bool row_filter = false;
};

struct SearchResult {
    int max_blocks = 0;
    CyclicPacking witness;
    bool proved_optimal = false;
    std::int64_t nodes_explored = 0;
    bool budget_exhausted = false;
    long long upper_bound = 0;  // bound used for pruning
};

// Largest strictly v-cyclic t-(u x v, k, 1) packing, by branch and bound over
// the orbits of t-subsets.
SearchResult max_packing(int u, int v, int k, int t, const SearchOptions& opts = {});

}  // namespace ooc
