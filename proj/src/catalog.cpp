#include "ooc/catalog.hpp"

#include "json.hpp"
#include "ooc/packing.hpp"

extern const char* const ooc_catalog_json;

namespace ooc {
namespace {

using nlohmann::json;

int listed(const json& d) {
    auto count = [](const json& j) { return j.is_array() ? static_cast<int>(j.size()) : 0; };
    int n = 0;
    for (const char* key : {"base_blocks", "terminal", "blocks"})
        if (d.contains(key)) n += count(d.at(key));
    if (d.contains("layers"))
        for (const json& l : d.at("layers")) n += count(l);
    return n;
}

void check(const CatalogEntry& e) {
    auto fail = [&](const std::string& why) { raise(ErrorKind::internal, "catalog entry " + e.id + ": " + why); };
    if (e.listed_count != e.expected_base_count) fail("listing count differs from expected_base_count");
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, CyclicPacking>) {
                auto r = verify_packing(x);
                if (!r.valid || !r.strictly_cyclic) fail("packing does not verify");
            } else if constexpr (std::is_same_v<T, FanDesign>) {
                auto r = verify_fan(x);
                if (!r.ok) fail(r.failure);
                if (x.universe.shape() == Shape::cyclic && !verify_h_cyclic(x, true).ok) fail("not strictly cyclic");
                if (x.universe.shape() == Shape::regular && !verify_regular(x, true).ok) fail("not strictly regular");
            } else if constexpr (std::is_same_v<T, HDesign>) {
                if (!verify_h_design(x).ok) fail("H design does not verify");
            } else if constexpr (std::is_same_v<T, RoSQS>) {
                if (!verify_rosqs(x).ok) fail("RoSQS does not verify");
            } else {
                fail("unexpected kind");
            }
        },
        e.design);
}

std::vector<CatalogEntry> load() {
    json root = json::parse(ooc_catalog_json);
    std::vector<CatalogEntry> out;
    for (const json& e : root.at("entries")) {
        CatalogEntry entry{e.at("id").get<std::string>(),
                           e.at("description").get<std::string>(),
                           e.at("action").get<std::string>(),
                           e.at("expected_base_count").get<int>(),
                           listed(e.at("design")),
                           parse_design(e.at("design").dump())};
        check(entry);
        out.push_back(std::move(entry));
    }
    return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = load();
    return entries;
}

const CatalogEntry& catalog_get(const std::string& id) {
    for (const CatalogEntry& e : catalog())
        if (e.id == id) return e;
    raise(ErrorKind::not_found, "no catalog entry '" + id + "'");
}

std::vector<std::string> catalog_ids() {
    std::vector<std::string> ids;
    for (const CatalogEntry& e : catalog()) ids.push_back(e.id);
    return ids;
}

const char* catalog_source() { return ooc_catalog_json; }

}  // namespace ooc
