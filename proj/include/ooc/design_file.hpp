#pragma once

#include <string>
#include <variant>

#include "ooc/core.hpp"
#include "ooc/designs.hpp"

namespace ooc {

using Design = std::variant<CyclicPacking, Code, FanDesign, HDesign, RoSQS>;

// "packing", "code", "fan", "hdesign" or "rosqs"
const char* kind_of(const Design& d);
std::size_t block_count(const Design& d);

// JSON design file: {"schema_version":1,"kind":...,"parameters":{...},...}.
// Throws ErrorKind::parse on malformed input.
Design parse_design(const std::string& text);
std::string serialize_design(const Design& d, int indent = -1);

// Accepts a file path or "catalog:<id>".
Design load_design(const std::string& source);
void save_design(const Design& d, const std::string& path);

}  // namespace ooc
