#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ooc/constructs.hpp"
#include "ooc/design_file.hpp"

namespace ooc {

struct PipelineInfo {
    std::string name;
    std::string description;
    int u = 0;
    int v = 0;
    bool takes_rosqs = false;  // an RoSQS(v+1) may replace the shipped rosqs8
};

struct PipelineRun {
    std::string name;
    CyclicPacking packing;
    std::vector<Trace> traces;
    // Named intermediate designs, in construction order.
    std::vector<std::pair<std::string, Design>> stages;
};

const std::vector<PipelineInfo>& pipelines();
const PipelineInfo& pipeline_info(const std::string& name);

// Runs a named chain of constructions from catalog data. The output is
// verified (valid and strictly cyclic) before it is returned.
PipelineRun run_pipeline(const std::string& name, const std::optional<RoSQS>& rosqs = std::nullopt);

}  // namespace ooc
