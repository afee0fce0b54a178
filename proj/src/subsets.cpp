#include "subsets.hpp"

namespace ooc::detail {

std::uint64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

std::vector<int> unrank_subset(std::uint64_t rank, int t) {
    std::vector<int> s(t);
    for (int i = t; i >= 1; --i) {
        int c = i - 1;
        while (binomial(c + 1, i) <= rank) ++c;
        s[i - 1] = c;
        rank -= binomial(c, i);
    }
    return s;
}

SubsetCounter::SubsetCounter(int n, int t) : t_(t) {
    std::uint64_t size = binomial(n, t);
    if (size > (std::uint64_t{1} << 30)) raise(ErrorKind::parameter, "too many t-subsets to tabulate");
    counts_.assign(size, 0);
}

void SubsetCounter::add_all(const std::vector<int>& items) {
    for_each_subset(items, t_, [&](const int* s) { add(s); });
}

}  // namespace ooc::detail
