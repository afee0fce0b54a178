#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ooc {

enum class ErrorKind { coordinate, shape, parameter, precondition, parse, not_found, internal };

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& message);

inline int mod(long long a, long long m) {
    long long r = a % m;
    return static_cast<int>(r < 0 ? r + m : r);
}

// Point of I_u x Z_v.
struct Point {
    int row = 0;
    int col = 0;
    auto operator<=>(const Point&) const = default;
};

// A k-subset of I_u x Z_v, points kept sorted by (row, col).
struct BaseBlock {
    std::vector<Point> points;

    std::size_t size() const { return points.size(); }
    bool operator==(const BaseBlock&) const = default;
    auto operator<=>(const BaseBlock& o) const { return points <=> o.points; }
};

// Validates coordinates against u x v and rejects repeated points.
BaseBlock make_block(std::vector<Point> points, int u, int v);
BaseBlock shift(const BaseBlock& b, int delta, int v);
// Lexicographically least block among the v column shifts.
BaseBlock canonicalize(const BaseBlock& b, int v);
int stabilizer_order(const BaseBlock& b, int v);
// Distinct translates of b, starting with b itself.
std::vector<BaseBlock> develop(const BaseBlock& b, int v);

class CodewordMatrix {
public:
    CodewordMatrix(int u, int v);

    int rows() const { return u_; }
    int cols() const { return v_; }
    bool at(int i, int j) const { return bits_[static_cast<std::size_t>(i) * v_ + j] != 0; }
    void set(int i, int j, bool value = true);
    int weight() const;
    bool operator==(const CodewordMatrix&) const = default;

private:
    int u_;
    int v_;
    std::vector<std::uint8_t> bits_;
};

CodewordMatrix to_matrix(const BaseBlock& b, int u, int v);
BaseBlock to_block(const CodewordMatrix& m);

struct CyclicPacking {
    int u = 0;
    int v = 0;
    int k = 4;
    int t = 3;
    std::vector<BaseBlock> base_blocks;
};

// Throws on out-of-range coordinates, wrong block sizes or bad parameters.
void check_shape(const CyclicPacking& p);

struct Code {
    int u = 0;
    int v = 0;
    int k = 4;
    int lambda = 2;
    std::vector<CodewordMatrix> codewords;
};

// A strictly cyclic t-packing and a (u x v, k, t-1) code are the same object
// seen through the block/matrix correspondence.
Code to_code(const CyclicPacking& p);
CyclicPacking to_packing(const Code& c);

}  // namespace ooc
