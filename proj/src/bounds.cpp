#include "ooc/bounds.hpp"

#include <numeric>

#include "ooc/core.hpp"

namespace ooc {
namespace {

long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

void check_params(int u, int v, int k, int lambda) {
    if (u < 1 || v < 1) raise(ErrorKind::parameter, "u and v must be positive");
    if (lambda < 1 || k <= lambda) raise(ErrorKind::parameter, "need k > lambda >= 1");
}

// floor((n-1)/(k-1) floor(... floor((n-lambda)/(k-lambda))))
long long inner(long long n, int k, int lambda) {
    long long x = floor_div(n - lambda, k - lambda);
    for (int i = lambda - 1; i >= 1; --i) x = floor_div((n - i) * x, k - i);
    return x;
}

bool in(long long x, long long m, std::initializer_list<long long> residues) {
    long long r = mod(x, m);
    for (long long e : residues)
        if (r == e) return true;
    return false;
}

}  // namespace

Rational Rational::of(long long num, long long den) {
    if (den == 0) raise(ErrorKind::parameter, "zero denominator");
    if (den < 0) num = -num, den = -den;
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g == 0) g = 1;
    return {num / g, den / g};
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
    return static_cast<__int128>(num) * o.den <=> static_cast<__int128>(o.num) * den;
}

Rational Rational::operator-(const Rational& o) const { return of(num * o.den - o.num * den, den * o.den); }

std::string Rational::str() const { return std::to_string(num) + "/" + std::to_string(den); }

long long johnson(int u, int v, int k, int lambda) {
    check_params(u, v, k, lambda);
    long long n = static_cast<long long>(u) * v;
    if (n < k) return 0;
    return floor_div(u * inner(n, k, lambda), k);
}

Rational j1(int n, int k, int lambda) {
    check_params(1, n, k, lambda);
    if (n < k) return {0, 1};
    return Rational::of(inner(n, k, lambda), k);
}

bool lifting_equal(int u, int v, int k, int lambda) {
    check_params(u, v, k, lambda);
    long long n = static_cast<long long>(u) * v;
    Rational frac = j1(static_cast<int>(n), k, lambda) - Rational{johnson(1, static_cast<int>(n), k, lambda), 1};
    bool by_fraction = frac < Rational::of(1, u);
    bool by_value = johnson(u, v, k, lambda) == u * johnson(1, static_cast<int>(n), k, lambda);
    if (by_fraction != by_value) raise(ErrorKind::internal, "lifting criteria disagree");
    return by_value;
}

JStar jstar(int u, int v) {
    check_params(u, v, 4, 2);
    const long long n = static_cast<long long>(u) * v;
    if (n < 4) return {0, JStarCase::johnson};
    const long long x = inner(n, 4, 2);

    const bool a = mod(u, 12) == 0 && in(v, 6, {2, 4});
    const bool b = mod(n, 12) == 0 && mod(v, 6) == 0;
    const bool c1 = in(u, 12, {7, 11}) && v == 2;
    const bool c2 = mod(n, 6) == 0 && !a && !b;
    const bool c5 = in(n, 12, {4, 8}) && v % 2 == 0;
    if (int(c1) + int(c2) + int(a) + int(b) + int(c5) > 1) raise(ErrorKind::internal, "jstar branches overlap");

    if (c1) return {johnson(u, v, 4, 2) - 1, JStarCase::u7_11_v2};
    if (c2) return {floor_div(u * (x - 1), 4), JStarCase::mod6_general};
    if (c5) return {floor_div(u * (x - 1), 4), JStarCase::mod12_4_8_veven};
    if (a) return {floor_div(u * (x - 1), 4) - 1, JStarCase::case_a};
    if (b) return {floor_div(u * (x - 2), 4), JStarCase::case_b};
    return {johnson(u, v, 4, 2), JStarCase::johnson};
}

const char* to_string(JStarCase c) {
    switch (c) {
        case JStarCase::u7_11_v2: return "U7_11_V2";
        case JStarCase::mod6_general: return "MOD6_GENERAL";
        case JStarCase::case_a: return "CASE_A";
        case JStarCase::case_b: return "CASE_B";
        case JStarCase::mod12_4_8_veven: return "MOD12_4_8_VEVEN";
        case JStarCase::johnson: return "JOHNSON";
    }
    return "?";
}

PerfectClass perfect_class(int u, int v) {
    if (u < 1 || v < 1) raise(ErrorKind::parameter, "u and v must be positive");
    if (in(u, 12, {4, 8}) && in(v, 6, {2, 4})) return PerfectClass::excluded;
    if (in(u, 12, {1, 5}) && in(v, 24, {2, 10})) return PerfectClass::class1;
    if (in(u, 12, {7, 11}) && in(v, 24, {14, 22})) return PerfectClass::class2;
    if (in(u, 6, {2, 4}) && in(v, 6, {1, 5})) return PerfectClass::class3;
    return PerfectClass::not_admissible;
}

const char* to_string(PerfectClass c) {
    switch (c) {
        case PerfectClass::class1: return "CLASS1";
        case PerfectClass::class2: return "CLASS2";
        case PerfectClass::class3: return "CLASS3";
        case PerfectClass::class4: return "CLASS4";
        case PerfectClass::excluded: return "EXCLUDED";
        case PerfectClass::not_admissible: return "NOT_ADMISSIBLE";
    }
    return "?";
}

long long perfect_size(int u, int v) {
    long long n = static_cast<long long>(u) * v;
    return u * (n - 1) * (n - 2) / 24;
}

}  // namespace ooc
