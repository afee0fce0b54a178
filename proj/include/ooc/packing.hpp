#pragma once

#include <optional>

#include "ooc/core.hpp"

namespace ooc {

struct PackingReport {
    bool valid = false;            // no t-subset covered twice
    bool strictly_cyclic = false;  // every base block has a full orbit
    std::vector<int> orbit_lengths;
    long long developed_blocks = 0;
    long long leave_size = 0;
    // Over-covered t-subset and its multiplicity, when invalid.
    std::optional<std::vector<Point>> violation;
    int violation_count = 0;
};

PackingReport verify_packing(const CyclicPacking& p);
// All blocks of the packing: each base block developed over Z_v.
std::vector<BaseBlock> develop_all(const CyclicPacking& p);
// Uncovered t-subsets; throws a precondition error on an invalid packing.
std::vector<std::vector<Point>> leave(const CyclicPacking& p);
bool is_perfect(const CyclicPacking& p);

}  // namespace ooc
