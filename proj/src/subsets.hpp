#pragma once

#include <cstdint>
#include <vector>

#include "ooc/core.hpp"

namespace ooc::detail {

std::uint64_t binomial(int n, int k);

// Colexicographic rank of a strictly increasing t-subset.
inline std::uint64_t rank_subset(const int* s, int t) {
    std::uint64_t r = 0;
    for (int i = 0; i < t; ++i) r += binomial(s[i], i + 1);
    return r;
}

std::vector<int> unrank_subset(std::uint64_t rank, int t);

// Calls f(const int*) for every t-combination of items (in index order).
template <class F>
void for_each_subset(const std::vector<int>& items, int t, F&& f) {
    const int n = static_cast<int>(items.size());
    if (t > n || t < 0) return;
    std::vector<int> idx(t), combo(t);
    for (int i = 0; i < t; ++i) idx[i] = i;
    while (true) {
        for (int i = 0; i < t; ++i) combo[i] = items[idx[i]];
        f(combo.data());
        int i = t - 1;
        while (i >= 0 && idx[i] == n - t + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < t; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// Saturating multiplicity table over all t-subsets of an N-set.
class SubsetCounter {
public:
    SubsetCounter(int n, int t);

    // items must be sorted ascending
    void add_all(const std::vector<int>& items);
    void add(const int* subset) {
        auto& c = counts_[rank_subset(subset, t_)];
        if (c < 255) ++c;
    }
    int count(std::uint64_t rank) const { return counts_[rank]; }
    std::uint64_t size() const { return counts_.size(); }
    int t() const { return t_; }

private:
    int t_;
    std::vector<std::uint8_t> counts_;
};

}  // namespace ooc::detail
