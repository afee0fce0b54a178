#pragma once

#include <compare>
#include <string>

namespace ooc {

struct Rational {
    long long num = 0;
    long long den = 1;

    static Rational of(long long num, long long den);  // reduced, den > 0
    bool operator==(const Rational&) const = default;
    std::strong_ordering operator<=>(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    std::string str() const;
};

// Nested-floor Johnson bound J(u x v, k, lambda).
long long johnson(int u, int v, int k, int lambda);
// J_1(1 x n, k, lambda): the Johnson bound with the outermost floor removed.
Rational j1(int n, int k, int lambda);
// Whether J(u x v) = u * J(1 x uv); checked against the fractional-part criterion.
bool lifting_equal(int u, int v, int k, int lambda);

enum class JStarCase { u7_11_v2, mod6_general, case_a, case_b, mod12_4_8_veven, johnson };

struct JStar {
    long long value = 0;
    JStarCase which = JStarCase::johnson;
};

// Tightened upper bound on the size of a (u x v, 4, 2) code.
JStar jstar(int u, int v);
const char* to_string(JStarCase c);

enum class PerfectClass { class1, class2, class3, class4, excluded, not_admissible };

// Which necessary-condition family admits a perfect (u x v, 4, 2) code.
// The u = 4,8 (mod 12), v = 2,4 (mod 6) family is ruled out by jstar.
PerfectClass perfect_class(int u, int v);
const char* to_string(PerfectClass c);

// u(uv-1)(uv-2)/24: base blocks of a perfect code.
long long perfect_size(int u, int v);

}  // namespace ooc
