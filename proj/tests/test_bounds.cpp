#include <map>

#include "doctest.h"
#include "ooc/bounds.hpp"
#include "oracles.hpp"
#include "published.hpp"

using namespace ooc;

namespace {

bool in(int x, int m, std::initializer_list<int> rs) {
    for (int r : rs)
        if (x % m == r) return true;
    return false;
}

bool necessary_for_perfect(int u, int v) {
    long long n = static_cast<long long>(u) * v;
    return in(static_cast<int>(n % 6), 6, {2, 4}) && (u * (n - 1) * (n - 2)) % 24 == 0;
}

}  // namespace

TEST_CASE("published table has 54 cells and every one meets jstar") {
    CHECK(published::kTable.size() == 54);
    for (const auto& [uv, value] : published::kTable) {
        auto [u, v] = uv;
        CAPTURE(u);
        CAPTURE(v);
        CHECK(jstar(u, v).value == value);
    }
}

TEST_CASE("johnson bound against the nested-floor oracle") {
    for (int u = 1; u <= 40; ++u)
        for (int v = 1; v <= 40; ++v)
            for (int lambda = 1; lambda <= 3; ++lambda)
                for (int k = lambda + 1; k <= 6; ++k) {
                    if (u * v < k) continue;
                    CHECK(johnson(u, v, k, lambda) == oracle::johnson(u, v, k, lambda));
                }
    CHECK(johnson(12, 2, 4, 2) == 252);
    CHECK(johnson(1, 3, 4, 2) == 0);
    CHECK_THROWS_AS(johnson(0, 3, 4, 2), Error);
    CHECK_THROWS_AS(johnson(2, 3, 2, 2), Error);
}

TEST_CASE("jstar never exceeds johnson") {
    for (int u = 1; u <= 50; ++u)
        for (int v = 1; v <= 50; ++v) {
            JStar j = jstar(u, v);
            CHECK(j.value <= johnson(u, v, 4, 2));
            CHECK(j.value >= 0);
            if (j.which == JStarCase::johnson) CHECK(j.value == johnson(u, v, 4, 2));
        }
}

TEST_CASE("jstar on one column is the optimal single-column packing size") {
    for (int u = 4; u <= 200; ++u) {
        CAPTURE(u);
        CHECK(jstar(u, 1).value == oracle::single_column(u));
    }
}

TEST_CASE("jstar cases") {
    CHECK(jstar(12, 2).value == 248);
    CHECK(jstar(12, 2).which == JStarCase::case_a);
    CHECK(jstar(2, 7).which == JStarCase::johnson);
    CHECK(jstar(4, 2).which == JStarCase::mod12_4_8_veven);
    CHECK(jstar(7, 2).which == JStarCase::u7_11_v2);
    CHECK(jstar(7, 2).value == johnson(7, 2, 4, 2) - 1);
    CHECK(jstar(6, 6).which == JStarCase::case_b);
    CHECK(jstar(3, 4).which == JStarCase::mod6_general);
    CHECK(std::string(to_string(JStarCase::case_b)) == "CASE_B");
}

TEST_CASE("j1 and lifting") {
    CHECK(j1(6, 4, 2) == Rational::of(3, 4));
    CHECK(j1(14, 4, 2) == Rational::of(13, 2));
    CHECK(j1(3, 4, 2) == Rational{0, 1});
    CHECK(Rational::of(4, -6) == Rational{-2, 3});
    CHECK(Rational::of(1, 3) < Rational::of(1, 2));
    CHECK(Rational::of(3, 4).str() == "3/4");
    CHECK_THROWS_AS(Rational::of(1, 0), Error);
    // J(2 x 7) = 13 but 2 J(1 x 14) = 12
    CHECK_FALSE(lifting_equal(2, 7, 4, 2));
    for (int u = 1; u <= 20; ++u)
        for (int v = 1; v <= 20; ++v) {
            if (u * v < 4) continue;
            bool direct = oracle::johnson(u, v, 4, 2) == u * oracle::johnson(1, u * v, 4, 2);
            CHECK(lifting_equal(u, v, 4, 2) == direct);
        }
}

TEST_CASE("perfect classes follow the congruence families") {
    for (int u = 1; u <= 60; ++u)
        for (int v = 1; v <= 60; ++v) {
            CAPTURE(u);
            CAPTURE(v);
            PerfectClass c = perfect_class(u, v);
            bool c1 = in(u, 12, {1, 5}) && in(v, 24, {2, 10});
            bool c2 = in(u, 12, {7, 11}) && in(v, 24, {14, 22});
            bool c3 = in(u, 6, {2, 4}) && in(v, 6, {1, 5});
            bool c4 = in(u, 12, {4, 8}) && in(v, 6, {2, 4});
            CHECK((c == PerfectClass::class1) == c1);
            CHECK((c == PerfectClass::class2) == c2);
            CHECK((c == PerfectClass::class3) == c3);
            CHECK((c == PerfectClass::excluded) == c4);
            if (c4) CHECK(jstar(u, v).value < perfect_size(u, v));
            if (c1 || c2 || c3) {
                CHECK(necessary_for_perfect(u, v));
                CHECK(jstar(u, v).value == perfect_size(u, v));
            }
            if (c4) CHECK(necessary_for_perfect(u, v));
        }
    CHECK_THROWS_AS(perfect_class(0, 1), Error);
    CHECK(perfect_size(2, 7) == 13);
}
