#pragma once

#include <string>
#include <vector>

#include "ooc/design_file.hpp"

namespace ooc {

struct CatalogEntry {
    std::string id;
    std::string description;
    std::string action;       // declared automorphism group
    int expected_base_count;  // number of blocks in the transcribed listing
    int listed_count;         // number actually read from the data file
    Design design;            // in canonical coordinates, base blocks under `action`
};

// Every entry is checked by its verifier the first time the catalog loads;
// a failing entry raises an internal error.
const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_get(const std::string& id);
std::vector<std::string> catalog_ids();
// The embedded data file.
const char* catalog_source();

}  // namespace ooc
