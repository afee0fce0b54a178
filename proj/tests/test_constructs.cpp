#include <functional>

#include "doctest.h"
#include "ooc/bounds.hpp"
#include "ooc/catalog.hpp"
#include "ooc/constructs.hpp"
#include "ooc/packing.hpp"
#include "oracles.hpp"

using namespace ooc;

namespace {

// Orbit exact cover by backtracking: find base blocks of size 4 on n points
// such that the developed blocks cover every `wanted` 3-subset exactly once
// and nothing else. `shift` is the generator of the acting cyclic group.
struct OrbitCover {
    int n;
    int order;
    std::function<int(int, int)> shift;
    std::function<bool(const std::vector<int>&)> wanted;

    std::vector<std::vector<int>> orbit(std::vector<int> b) const {
        std::set<std::vector<int>> out;
        for (int d = 0; d < order; ++d) {
            std::vector<int> x;
            for (int p : b) x.push_back(shift(p, d));
            std::sort(x.begin(), x.end());
            out.insert(x);
        }
        return {out.begin(), out.end()};
    }

    bool run(std::set<std::vector<int>>& covered, std::vector<std::vector<int>>& base) const {
        std::vector<int> pts(n);
        for (int i = 0; i < n; ++i) pts[i] = i;
        std::vector<int> target;
        for (const auto& s : oracle::subsets(pts, 3))
            if (wanted(s) && !covered.count(s)) {
                target = s;
                break;
            }
        if (target.empty()) return true;
        for (int x = 0; x < n; ++x) {
            if (std::find(target.begin(), target.end(), x) != target.end()) continue;
            std::vector<int> b = target;
            b.push_back(x);
            std::sort(b.begin(), b.end());
            std::vector<std::vector<int>> added;
            bool ok = true;
            for (const auto& blk : orbit(b)) {
                for (const auto& s : oracle::subsets(blk, 3)) {
                    if (!wanted(s) || covered.count(s)) {
                        ok = false;
                        break;
                    }
                    covered.insert(s);
                    added.push_back(s);
                }
                if (!ok) break;
            }
            if (ok) {
                base.push_back(b);
                if (run(covered, base)) return true;
                base.pop_back();
            }
            for (const auto& s : added) covered.erase(s);
        }
        return false;
    }
};

// RoSQS(n) on Z_{n-1} + {infinity}.
RoSQS find_rosqs(int n) {
    const int m = n - 1;
    OrbitCover oc{n, m, [m](int p, int d) { return p == m ? m : (p + d) % m; },
                  [](const std::vector<int>&) { return true; }};
    std::set<std::vector<int>> covered;
    std::vector<std::vector<int>> base;
    REQUIRE(oc.run(covered, base));
    RoSQS r{n, {}};
    for (auto b : base) {
        for (int& p : b)
            if (p == m) p = -1;
        r.base_blocks.push_back(b);
    }
    return r;
}

// Semi-cyclic 0-FG of type h^2 on I_2 x I_1 x Z_h (groups are the two rows).
FanDesign find_semicyclic(int h) {
    Universe u = Universe::cyclic({1, 1}, h);
    OrbitCover oc{u.size(), h, [&u](int p, int d) { return u.shift(p, d); },
                  [&u](const std::vector<int>& s) { return u.group_of(s[0]) != u.group_of(s[1]) || u.group_of(s[0]) != u.group_of(s[2]); }};
    std::set<std::vector<int>> covered;
    std::vector<std::vector<int>> base;
    REQUIRE(oc.run(covered, base));
    return FanDesign{u, {}, base, false};
}

CyclicPacking empty_packing(int u, int v) { return {u, v, 4, 3, {}}; }

const RoSQS& rosqs8() { return std::get<RoSQS>(catalog_get("rosqs8").design); }

template <class T>
const T& entry(const std::string& id) {
    return std::get<T>(catalog_get(id).design);
}

bool strict_and_valid(const CyclicPacking& p) { return oracle::strictly_cyclic(p) && oracle::packing_valid(p); }

}  // namespace

TEST_CASE("hartman from the shipped RoSQS(8)") {
    HartmanParts parts = hartman_parts(rosqs8());
    CHECK(parts.a1.size() + parts.a1_image.size() == 2);
    CHECK(parts.a2.size() + parts.a2_image.size() == 2);
    CHECK(parts.a3.size() == 9);
    // images: x_i -> (-x)_{1-i}
    for (std::size_t i = 0; i < parts.a1.size(); ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const Point& q = parts.a1[i].points[j];
            Point img{1 - q.row, mod(-q.col, 7)};
            CHECK(std::find(parts.a1_image[i].points.begin(), parts.a1_image[i].points.end(), img) !=
                  parts.a1_image[i].points.end());
        }

    Built<CyclicPacking> b = hartman(rosqs8());
    CHECK(b.design.base_blocks.size() == 13);
    CHECK(b.trace.total == 13);
    CHECK(b.trace.steps.size() == 5);
    CHECK(strict_and_valid(b.design));
    CHECK(is_perfect(b.design));
    CHECK(oracle::ooc_valid(to_code(b.design)));
    for (const auto& blk : b.design.base_blocks) CHECK(canonicalize(blk, 7) == blk);
}

TEST_CASE("hartman from a searched RoSQS(20) gives a perfect 2 x 19 code") {
    RoSQS r = find_rosqs(20);
    CHECK(r.base_blocks.size() == 15);
    REQUIRE(verify_rosqs(r).ok);
    Built<CyclicPacking> b = hartman(r);
    CHECK(b.design.base_blocks.size() == 111);
    CHECK(static_cast<long long>(b.design.base_blocks.size()) == jstar(2, 19).value);
    CHECK(is_perfect(b.design));
    CHECK(strict_and_valid(b.design));
}

TEST_CASE("hartman rejects bad input") {
    RoSQS r16{16, {}};  // p = 15 is not prime; checked before the blocks
    try {
        hartman(r16);
        FAIL("p = 9 accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::parameter);
    }
    RoSQS broken = rosqs8();
    broken.base_blocks[0][3] = 6;
    try {
        hartman(broken);
        FAIL("broken RoSQS accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::precondition);
    }
}

TEST_CASE("filling a cyclic 0-FG") {
    auto b = filling_1(entry<FanDesign>("fg-4^2-s2c"), {empty_packing(2, 2)});
    CHECK(b.design.u == 4);
    CHECK(b.design.v == 2);
    CHECK(b.design.base_blocks.size() == 6);
    CHECK(strict_and_valid(b.design));

    auto c = filling_1(entry<FanDesign>("fg-6^2-s3c"), {entry<CyclicPacking>("small-(2,3)")});
    CHECK(c.design.base_blocks.size() == 15 + 2 * 1);
    CHECK(static_cast<long long>(c.design.base_blocks.size()) == jstar(4, 3).value);
    CHECK(strict_and_valid(c.design));

    CHECK_THROWS_AS(filling_1(entry<FanDesign>("fg-(2,2)reg-4^2"), {empty_packing(2, 2)}), Error);
    CHECK_THROWS_AS(filling_1(entry<FanDesign>("fg-4^2-s2c"), {empty_packing(3, 2)}), Error);
}

TEST_CASE("filling a regular 0-FG dilates the filler") {
    auto a = filling_2(entry<FanDesign>("fg-(2,2)reg-4^2"), empty_packing(2, 2));
    CHECK(a.design.base_blocks.size() == 3);
    CHECK(strict_and_valid(a.design));
    auto b = filling_2(entry<FanDesign>("fg-(2,4)reg-8^2"), a.design);
    CHECK(b.design.v == 8);
    CHECK(b.design.base_blocks.size() == 17);
    CHECK(strict_and_valid(b.design));
    CHECK_THROWS_AS(filling_2(entry<FanDesign>("fg-(2,4)reg-8^2"), empty_packing(2, 2)), Error);
    CHECK_THROWS_AS(filling_2(entry<FanDesign>("fg-4^2-s2c"), empty_packing(2, 2)), Error);
}

TEST_CASE("weighting an H design and a fan") {
    HDesign h = weighting_3(as_cyclic(entry<HDesign>("h-4-2-4-3")), {semicyclic_h4(2)}).design;
    CHECK(h.blocks.size() == 32);
    CHECK(verify_h_design(h).ok);
    CHECK(verify_h_cyclic(h, true).ok);

    Universe u = Universe::cyclic({1, 1, 1, 1}, 1);
    FanDesign master{u, {{}}, {{0, 1, 2, 3}}, false};
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) master.layers[0].push_back({a, b});
    REQUIRE(verify_fan(master).ok);
    auto w = weighting_1(master, {entry<FanDesign>("fg-4^2-s2c")}, {h});
    CHECK(w.design.s() == 0);
    CHECK(verify_fan(w.design).ok);
    CHECK(verify_h_cyclic(w.design, true).ok);
    CHECK(w.design.base_count() == 6 * 6 + 32);
    CHECK_THROWS_AS(weighting_1(master, {}, {h}), Error);
}

TEST_CASE("folding columns into rows") {
    auto f = fold(entry<CyclicPacking>("perfect-(2,7)"), 7);
    CHECK(f.design.u == 14);
    CHECK(f.design.v == 1);
    CHECK(f.design.base_blocks.size() == 91);
    CHECK(oracle::packing_valid(f.design));
    CHECK(static_cast<long long>(f.design.base_blocks.size()) == jstar(14, 1).value);

    const auto& p = entry<CyclicPacking>("small-(2,6)");
    auto same = fold(p, 1);
    CHECK(same.design.u == 2);
    CHECK(same.design.base_blocks.size() == p.base_blocks.size());
    CHECK(verify_packing(same.design).valid);

    for (int v1 : {2, 3}) {
        auto g = fold(p, v1);
        CHECK(g.design.u == 2 * v1);
        CHECK(g.design.v == 6 / v1);
        CHECK(g.design.base_blocks.size() == v1 * p.base_blocks.size());
        CHECK(strict_and_valid(g.design));
    }
    // (i, c) -> (i v1 + c mod v1, c div v1) on a single block
    CyclicPacking one{2, 6, 4, 3, {make_block({{0, 0}, {0, 1}, {1, 2}, {1, 5}}, 2, 6)}};
    auto g = fold(one, 3);
    auto want = canonicalize(make_block({{0, 0}, {1, 0}, {5, 0}, {5, 1}}, 6, 2), 2);
    CHECK(std::find(g.design.base_blocks.begin(), g.design.base_blocks.end(), want) != g.design.base_blocks.end());
    CHECK_THROWS_AS(fold(p, 4), Error);
    CHECK_THROWS_AS(fold(p, 0), Error);
}

TEST_CASE("semi-cyclic to strictly v-cyclic") {
    FanDesign sc = find_semicyclic(6);
    REQUIRE(verify_fan(sc).ok);
    auto b = semicyclic_to_vcyclic(sc);
    CHECK(b.design.universe == Universe::cyclic({2, 2}, 3));
    CHECK(verify_fan(b.design).ok);
    CHECK(verify_h_cyclic(b.design, true).ok);
    CHECK(expand(b.design.terminal, b.design.universe, false).size() == 45);
    // every block carried through (x, 0, j) -> (x, j mod 2, j div 2)
    const Universe& from = sc.universe;
    const Universe& to = b.design.universe;
    std::set<Block> mapped, got;
    for (const Block& blk : expand(sc.terminal, from, false)) {
        Block m;
        for (int p : blk) {
            auto c = from.coords(p);
            m.push_back(to.id({c[0], c[2] % 2, c[2] / 2}));
        }
        std::sort(m.begin(), m.end());
        mapped.insert(m);
    }
    for (const Block& blk : expand(b.design.terminal, to, false)) got.insert(blk);
    CHECK(mapped == got);

    auto filled = filling_1(b.design, {entry<CyclicPacking>("small-(2,3)")});
    CHECK(strict_and_valid(filled.design));
    CHECK(static_cast<long long>(filled.design.base_blocks.size()) == jstar(4, 3).value);

    FanDesign even = find_semicyclic(4);
    try {
        semicyclic_to_vcyclic(even);
        FAIL("even v accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::parameter);
    }
    CHECK_THROWS_AS(semicyclic_to_vcyclic(entry<FanDesign>("fg-4^2-s2c")), Error);
}

TEST_CASE("changing the action") {
    auto c = regular_to_h1cyclic(entry<FanDesign>("fg-(2,2)reg-4^2"), 2);
    CHECK(c.design.universe.shape() == Shape::cyclic);
    CHECK(c.design.universe.group_rows() == std::vector<int>{2, 2});
    CHECK(verify_fan(c.design).ok);
    CHECK(verify_h_cyclic(c.design, true).ok);
    CHECK(c.design.base_count() == 6);
    auto c1 = regular_to_h1cyclic(entry<FanDesign>("fg-(2,2)reg-4^2"), 1);
    CHECK(c1.design.base_count() == 12);
    CHECK_THROWS_AS(regular_to_h1cyclic(entry<FanDesign>("fg-(2,2)reg-4^2"), 3), Error);

    auto r = restrict_action(entry<FanDesign>("fg-6^2-s3c"), 1);
    CHECK(r.design.base_count() == 45);
    CHECK(verify_fan(r.design).ok);
    auto h = restrict_action(semicyclic_h4(3), 1);
    CHECK(h.design.blocks.size() == 27);
    CHECK(verify_h_design(h.design).ok);
    CHECK_THROWS_AS(restrict_action(semicyclic_h4(3), 2), Error);
}

TEST_CASE("1-FG sources") {
    auto a = perfect_to_regular_1fg(entry<CyclicPacking>("perfect-(2,7)"));
    CHECK(a.design.s() == 1);
    CHECK(a.design.layers[0].size() == 12);
    CHECK(a.design.base_count() == 25);
    CHECK(verify_fan(a.design).ok);
    CHECK(verify_regular(a.design, true).ok);
    CHECK_THROWS_AS(perfect_to_regular_1fg(entry<CyclicPacking>("small-(2,6)")), Error);

    auto b = rosqs_to_1fg(rosqs8());
    CHECK(b.design.s() == 1);
    CHECK(b.design.universe.size() == 7);
    CHECK(verify_fan(b.design).ok);
    CHECK(verify_regular(b.design, true).ok);

    auto c = add_pair_layer(entry<FanDesign>("fg-(2,2)reg-4^2"));
    CHECK(c.design.s() == 1);
    CHECK(c.design.base_count() == 7);
    CHECK(verify_fan(c.design).ok);

    FanDesign d = as_cyclic(entry<FanDesign>("fg-plain-4^2"));
    CHECK(d.universe.group_rows() == std::vector<int>{4, 4});
    CHECK(d.universe.h() == 1);
    CHECK(verify_fan(d).ok);
    CHECK_THROWS_AS(as_cyclic(entry<FanDesign>("fg-4^2-s2c")), Error);
}

TEST_CASE("traces list steps and totals") {
    auto b = filling_2(entry<FanDesign>("fg-(2,3)reg-6^5"), entry<CyclicPacking>("small-(2,3)"));
    CHECK(b.trace.total == 67);
    long long sum = 0;
    for (const auto& s : b.trace.steps) sum += s.blocks;
    CHECK(sum == b.trace.total);
    CHECK_FALSE(b.trace.output.empty());
}
