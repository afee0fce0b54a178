#include <map>
#include <random>

#include "doctest.h"
#include "ooc/bounds.hpp"
#include "ooc/catalog.hpp"
#include "ooc/packing.hpp"
#include "oracles.hpp"

using namespace ooc;

TEST_CASE("catalog entries and counts") {
    const std::map<std::string, int> expected = {
        {"small-(2,3)", 1},       {"small-(3,2)", 1},       {"rosqs8", 2},          {"perfect-(2,7)", 13},
        {"small-(3,3)", 6},       {"small-(2,6)", 8},       {"small-(3,4)", 12},    {"small-(6,2)", 25},
        {"small-(7,2)", 44},      {"small-(2,11)", 35},     {"fg-plain-4^2", 12},   {"fan-plain-3^3", 27},
        {"fg-4^2-s2c", 6},        {"fg-6^2-s3c", 15},       {"fg-(2,2)reg-4^2", 3}, {"fg-(2,4)reg-8^2", 14},
        {"h-4-2-4-3", 8},         {"fg-(2,6)reg-12^2", 33}, {"fg-12^2-s2c", 198},   {"fg-(2,3)reg-6^5", 66},
        {"fg-(3,2)reg-6^5", 99},  {"fg-6^3-s3c", 63},
    };
    CHECK(catalog().size() == expected.size());
    for (const auto& e : catalog()) {
        CAPTURE(e.id);
        REQUIRE(expected.count(e.id));
        CHECK(static_cast<int>(block_count(e.design)) == expected.at(e.id));
        CHECK(e.expected_base_count == e.listed_count);
        CHECK_FALSE(e.description.empty());
    }
    // listed under a larger presentation group, expanded on load
    CHECK(catalog_get("fg-(3,2)reg-6^5").listed_count == 33);
    CHECK(catalog_ids().size() == expected.size());
    CHECK(std::string(catalog_source()).find("small-(2,3)") != std::string::npos);
    try {
        catalog_get("missing");
        FAIL("expected not_found");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::not_found);
    }
}

TEST_CASE("catalog packings are strictly cyclic, valid and meet jstar") {
    for (const auto& e : catalog()) {
        const auto* p = std::get_if<CyclicPacking>(&e.design);
        if (!p) continue;
        CAPTURE(e.id);
        CHECK(oracle::strictly_cyclic(*p));
        CHECK(oracle::packing_valid(*p));
        PackingReport r = verify_packing(*p);
        CHECK(r.valid);
        CHECK(r.strictly_cyclic);
        CHECK(static_cast<long long>(p->base_blocks.size()) == jstar(p->u, p->v).value);
        CHECK(oracle::ooc_valid(to_code(*p)));
    }
}

TEST_CASE("subfamilies stay valid and mutations are caught") {
    std::mt19937 rng(99);
    for (const auto& e : catalog()) {
        const auto* p = std::get_if<CyclicPacking>(&e.design);
        if (!p) continue;
        CAPTURE(e.id);
        for (int trial = 0; trial < 5; ++trial) {
            CyclicPacking q = oracle::subsample(*p, rng);
            CHECK(verify_packing(q).valid);
            CHECK(oracle::packing_valid(q));
        }
        // a translate of an existing base block repeats its whole orbit
        CyclicPacking dup = *p;
        dup.base_blocks.push_back(shift(p->base_blocks.back(), 1, p->v));
        CHECK_FALSE(verify_packing(dup).valid);
        CHECK_FALSE(oracle::packing_valid(dup));
        CHECK_FALSE(oracle::ooc_valid(to_code(dup)));
    }
    // short orbit: invariant under half the column shifts
    CyclicPacking s{2, 6, 4, 3, {make_block({{0, 0}, {0, 3}, {1, 0}, {1, 3}}, 2, 6)}};
    CHECK_FALSE(verify_packing(s).strictly_cyclic);
    CHECK_FALSE(oracle::strictly_cyclic(s));
}
