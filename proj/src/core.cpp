#include "ooc/core.hpp"

#include <algorithm>

namespace ooc {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::coordinate: return "coordinate";
        case ErrorKind::shape: return "shape";
        case ErrorKind::parameter: return "parameter";
        case ErrorKind::precondition: return "precondition";
        case ErrorKind::parse: return "parse";
        case ErrorKind::not_found: return "not_found";
        case ErrorKind::internal: return "internal";
    }
    return "unknown";
}

void raise(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

BaseBlock make_block(std::vector<Point> points, int u, int v) {
    for (const Point& p : points) {
        if (p.row < 0 || p.row >= u || p.col < 0 || p.col >= v)
            raise(ErrorKind::coordinate, "point (" + std::to_string(p.row) + "," + std::to_string(p.col) +
                                             ") outside I_" + std::to_string(u) + " x Z_" + std::to_string(v));
    }
    std::sort(points.begin(), points.end());
    if (std::adjacent_find(points.begin(), points.end()) != points.end())
        raise(ErrorKind::shape, "block repeats a point");
    return BaseBlock{std::move(points)};
}

BaseBlock shift(const BaseBlock& b, int delta, int v) {
    BaseBlock out = b;
    for (Point& p : out.points) p.col = mod(static_cast<long long>(p.col) + delta, v);
    std::sort(out.points.begin(), out.points.end());
    return out;
}

BaseBlock canonicalize(const BaseBlock& b, int v) {
    BaseBlock best = shift(b, 0, v);
    for (int d = 1; d < v; ++d) {
        BaseBlock s = shift(b, d, v);
        if (s < best) best = std::move(s);
    }
    return best;
}

int stabilizer_order(const BaseBlock& b, int v) {
    BaseBlock base = shift(b, 0, v);
    int count = 1;
    for (int d = 1; d < v; ++d)
        if (shift(base, d, v) == base) ++count;
    return count;
}

std::vector<BaseBlock> develop(const BaseBlock& b, int v) {
    int len = v / stabilizer_order(b, v);
    std::vector<BaseBlock> out;
    out.reserve(len);
    for (int d = 0; d < len; ++d) out.push_back(shift(b, d, v));
    return out;
}

CodewordMatrix::CodewordMatrix(int u, int v) : u_(u), v_(v) {
    if (u <= 0 || v <= 0) raise(ErrorKind::parameter, "matrix dimensions must be positive");
    bits_.assign(static_cast<std::size_t>(u) * v, 0);
}

void CodewordMatrix::set(int i, int j, bool value) {
    if (i < 0 || i >= u_ || j < 0 || j >= v_) raise(ErrorKind::coordinate, "matrix index out of range");
    bits_[static_cast<std::size_t>(i) * v_ + j] = value ? 1 : 0;
}

int CodewordMatrix::weight() const { return static_cast<int>(std::count(bits_.begin(), bits_.end(), 1)); }

CodewordMatrix to_matrix(const BaseBlock& b, int u, int v) {
    CodewordMatrix m(u, v);
    for (const Point& p : b.points) {
        if (p.row < 0 || p.row >= u || p.col < 0 || p.col >= v) raise(ErrorKind::coordinate, "point outside matrix");
        m.set(p.row, p.col);
    }
    return m;
}

BaseBlock to_block(const CodewordMatrix& m) {
    BaseBlock b;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m.at(i, j)) b.points.push_back({i, j});
    return b;
}

void check_shape(const CyclicPacking& p) {
    if (p.u <= 0 || p.v <= 0) raise(ErrorKind::parameter, "u and v must be positive");
    if (p.t < 1 || p.k < p.t) raise(ErrorKind::parameter, "need k >= t >= 1");
    for (const BaseBlock& b : p.base_blocks) {
        if (static_cast<int>(b.size()) != p.k)
            raise(ErrorKind::shape, "block of size " + std::to_string(b.size()) + ", expected " + std::to_string(p.k));
        make_block(b.points, p.u, p.v);
    }
}

Code to_code(const CyclicPacking& p) {
    check_shape(p);
    Code c{p.u, p.v, p.k, p.t - 1, {}};
    for (const BaseBlock& b : p.base_blocks) c.codewords.push_back(to_matrix(b, p.u, p.v));
    return c;
}

CyclicPacking to_packing(const Code& c) {
    CyclicPacking p{c.u, c.v, c.k, c.lambda + 1, {}};
    for (const CodewordMatrix& m : c.codewords) {
        if (m.rows() != c.u || m.cols() != c.v) raise(ErrorKind::shape, "codeword dimensions differ from code");
        p.base_blocks.push_back(to_block(m));
    }
    check_shape(p);
    return p;
}

}  // namespace ooc
