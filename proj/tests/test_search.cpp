#include "doctest.h"
#include "ooc/bounds.hpp"
#include "ooc/packing.hpp"
#include "ooc/search.hpp"
#include "oracles.hpp"

using namespace ooc;

namespace {

SearchOptions exhaustive(bool row_filter = false) {
    SearchOptions o;
    o.use_jstar = false;
    o.row_filter = row_filter;
    return o;
}

void check_witness(const SearchResult& r) {
    CHECK(static_cast<int>(r.witness.base_blocks.size()) == r.max_blocks);
    CHECK(oracle::strictly_cyclic(r.witness));
    CHECK(oracle::packing_valid(r.witness));
}

}  // namespace

TEST_CASE("small optima") {
    struct Case {
        int u, v, expected;
    };
    for (Case c : {Case{2, 3, 1}, Case{3, 2, 1}, Case{2, 4, 3}, Case{2, 2, 0}, Case{6, 1, 3}}) {
        CAPTURE(c.u);
        CAPTURE(c.v);
        SearchResult r = max_packing(c.u, c.v, 4, 3);
        CHECK(r.max_blocks == c.expected);
        CHECK(r.proved_optimal);
        CHECK_FALSE(r.budget_exhausted);
        check_witness(r);
    }
    SearchResult tiny = max_packing(1, 3, 4, 3);
    CHECK(tiny.max_blocks == 0);
    CHECK(tiny.proved_optimal);
}

TEST_CASE("row filter agrees with the unreduced search") {
    for (int u = 1; u <= 8; ++u)
        for (int v = 1; u * v <= 8; ++v) {
            if (u * v < 4) continue;
            CAPTURE(u);
            CAPTURE(v);
            SearchResult plain = max_packing(u, v, 4, 3, exhaustive(false));
            SearchResult filtered = max_packing(u, v, 4, 3, exhaustive(true));
            CHECK(plain.proved_optimal);
            CHECK(filtered.proved_optimal);
            CHECK(plain.max_blocks == filtered.max_blocks);
            CHECK(filtered.nodes_explored <= plain.nodes_explored);
            check_witness(filtered);
        }
}

TEST_CASE("results never exceed jstar and meet it where known") {
    for (int u = 1; u <= 10; ++u)
        for (int v = 1; u * v <= 10; ++v) {
            if (u * v < 4) continue;
            CAPTURE(u);
            CAPTURE(v);
            SearchResult r = max_packing(u, v, 4, 3);
            CHECK(r.max_blocks <= jstar(u, v).value);
            CHECK(r.proved_optimal);
            check_witness(r);
        }
}

TEST_CASE("proved witnesses are maximal") {
    for (auto [u, v] : {std::pair{2, 4}, std::pair{4, 2}, std::pair{2, 3}, std::pair{3, 2}, std::pair{1, 8}}) {
        CAPTURE(u);
        CAPTURE(v);
        SearchResult r = max_packing(u, v, 4, 3, exhaustive());
        REQUIRE(r.proved_optimal);
        std::vector<std::pair<int, int>> cells;
        for (int i = 0; i < u; ++i)
            for (int j = 0; j < v; ++j) cells.push_back({i, j});
        for (const auto& s : oracle::subsets(cells, 4)) {
            std::vector<Point> pts;
            for (auto [i, j] : s) pts.push_back({i, j});
            BaseBlock b = make_block(pts, u, v);
            if (canonicalize(b, v) != b || stabilizer_order(b, v) != 1) continue;
            CyclicPacking more = r.witness;
            more.base_blocks.push_back(b);
            CHECK_FALSE(oracle::packing_valid(more));
        }
    }
}

TEST_CASE("search is deterministic") {
    SearchResult a = max_packing(3, 3, 4, 3), b = max_packing(3, 3, 4, 3);
    CHECK(a.max_blocks == 6);
    CHECK(a.witness.base_blocks == b.witness.base_blocks);
    CHECK(a.nodes_explored == b.nodes_explored);
}

TEST_CASE("budget and parameters") {
    SearchOptions o;
    o.node_budget = 5;
    o.use_jstar = false;
    SearchResult r = max_packing(3, 4, 4, 3, o);
    CHECK(r.budget_exhausted);
    CHECK_FALSE(r.proved_optimal);
    check_witness(r);
    CHECK(max_packing(3, 4, 4, 3).upper_bound == jstar(3, 4).value);

    CHECK_THROWS_AS(max_packing(0, 4, 4, 3), Error);
    CHECK_THROWS_AS(max_packing(2, 4, 3, 3), Error);
    o.node_budget = 0;
    CHECK_THROWS_AS(max_packing(2, 4, 4, 3, o), Error);
}

TEST_CASE("other block sizes") {
    // k = 3, t = 2: strictly cyclic difference packings on 1 x v
    SearchResult r = max_packing(1, 7, 3, 2);
    CHECK(r.max_blocks == 1);
    CHECK(r.proved_optimal);
    check_witness(r);
    CHECK(max_packing(1, 13, 3, 2).max_blocks == 2);
}
