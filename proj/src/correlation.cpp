#include "ooc/correlation.hpp"

#include <algorithm>

namespace ooc {

int correlation(const CodewordMatrix& a, const CodewordMatrix& b, int r) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) raise(ErrorKind::shape, "codeword dimensions differ");
    int v = a.cols();
    int s = 0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < v; ++j)
            if (a.at(i, j) && b.at(i, mod(static_cast<long long>(j) + r, v))) ++s;
    return s;
}

OocReport verify_ooc(const Code& code) {
    if (code.lambda < 0) raise(ErrorKind::parameter, "lambda must be non-negative");
    const int n = static_cast<int>(code.codewords.size());
    const int v = code.v;
    std::vector<BaseBlock> supports;
    supports.reserve(n);
    for (const CodewordMatrix& m : code.codewords) {
        if (m.rows() != code.u || m.cols() != code.v) raise(ErrorKind::shape, "codeword dimensions differ from code");
        if (m.weight() != code.k)
            raise(ErrorKind::shape, "codeword weight " + std::to_string(m.weight()) + ", expected " + std::to_string(code.k));
        supports.push_back(to_block(m));
    }

    // For fixed (a, b) the overlap at shift r counts pairs (i,x) in a, (i,y) in b
    // with y - x = r. Unordered pairs suffice since corr(a,b,r) = corr(b,a,v-r).
    OocReport report;
    std::vector<int> counts(v);
    for (int a = 0; a < n; ++a) {
        for (int b = a; b < n; ++b) {
            std::fill(counts.begin(), counts.end(), 0);
            for (const Point& p : supports[a].points)
                for (const Point& q : supports[b].points)
                    if (p.row == q.row) ++counts[mod(static_cast<long long>(q.col) - p.col, v)];
            for (int r = (a == b ? 1 : 0); r < v; ++r) {
                int c = counts[r];
                report.worst_value = std::max(report.worst_value, c);
                if (c > code.lambda && !report.witness) report.witness = CorrelationWitness{a, b, r, c};
            }
        }
    }
    report.ok = !report.witness.has_value();
    return report;
}

}  // namespace ooc
