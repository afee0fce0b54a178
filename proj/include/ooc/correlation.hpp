#pragma once

#include <optional>

#include "ooc/core.hpp"

namespace ooc {

// sum_{i,j} a[i][j] * b[i][(j + r) mod v]
int correlation(const CodewordMatrix& a, const CodewordMatrix& b, int r);

struct CorrelationWitness {
    int first = 0;   // codeword indices
    int second = 0;
    int shift = 0;
    int value = 0;
};

struct OocReport {
    bool ok = true;
    int worst_value = 0;
    // First violation in (first, second, shift) order.
    std::optional<CorrelationWitness> witness;
};

OocReport verify_ooc(const Code& code);

}  // namespace ooc
