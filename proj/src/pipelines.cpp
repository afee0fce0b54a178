#include "ooc/pipelines.hpp"

#include <functional>
#include <map>

#include "ooc/catalog.hpp"
#include "ooc/packing.hpp"
#include "ooc/search.hpp"

namespace ooc {
namespace {

template <class T>
const T& entry(const std::string& id) {
    return std::get<T>(catalog_get(id).design);
}

CyclicPacking empty_packing(int u, int v) { return {u, v, 4, 3, {}}; }

class Run {
public:
    explicit Run(std::string name) { out_.name = std::move(name); }

    template <class T>
    T keep(Built<T> b, const std::string& stage) {
        out_.traces.push_back(std::move(b.trace));
        out_.stages.emplace_back(stage, b.design);
        return std::move(b.design);
    }

    template <class T>
    T note(T d, const std::string& stage) {
        out_.stages.emplace_back(stage, d);
        return d;
    }

    CyclicPacking searched(int u, int v) {
        SearchResult r = max_packing(u, v, 4, 3);
        Trace t{"search", {}, {{"branch and bound, " + std::to_string(r.nodes_explored) + " nodes", r.max_blocks}},
                "packing " + std::to_string(u) + "x" + std::to_string(v) + ", " + std::to_string(r.max_blocks) +
                    " base blocks" + (r.proved_optimal ? " (optimal)" : ""),
                r.max_blocks};
        out_.traces.push_back(t);
        out_.stages.emplace_back("search-" + std::to_string(u) + "x" + std::to_string(v), r.witness);
        return r.witness;
    }

    PipelineRun finish(CyclicPacking p) {
        auto rep = verify_packing(p);
        if (!rep.valid || !rep.strictly_cyclic) raise(ErrorKind::internal, out_.name + " produced an invalid packing");
        out_.packing = std::move(p);
        return std::move(out_);
    }

private:
    PipelineRun out_;
};

// 2-cyclic H(4,4,4,3): the plain H(4,2,4,3) weighted by the semi-cyclic H(4,2,4,3).
HDesign h4_4_2cyclic(Run& run) {
    HDesign master = as_cyclic(entry<HDesign>("h-4-2-4-3"));
    return run.keep(weighting_3(master, {semicyclic_h4(2)}), "h-4-4-4-3-2cyclic");
}

// 1-cyclic H(4,6,4,3): the plain H(4,2,4,3) weighted by a plain H(4,3,4,3).
HDesign h4_6_plain(Run& run) {
    HDesign master = as_cyclic(entry<HDesign>("h-4-2-4-3"));
    HDesign h3 = run.keep(restrict_action(semicyclic_h4(3), 1), "h-4-3-4-3-plain");
    return run.keep(weighting_3(master, {h3}), "h-4-6-4-3-plain");
}

CyclicPacking packing_2x4(Run& run) {
    return run.keep(filling_2(entry<FanDesign>("fg-(2,2)reg-4^2"), empty_packing(2, 2)), "packing-2x4");
}

CyclicPacking packing_8x2(Run& run) {
    Universe u = Universe::cyclic({1, 1, 1, 1}, 1);
    FanDesign master{u, {{}}, {{0, 1, 2, 3}}, false};
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) master.layers[0].push_back({a, b});
    run.note(master, "1-fg-1^4");
    HDesign h = h4_4_2cyclic(run);
    FanDesign fg = run.keep(weighting_1(master, {entry<FanDesign>("fg-4^2-s2c")}, {h}), "fg-4^4-s2c");
    return run.keep(filling_1(fg, {empty_packing(2, 2)}), "packing-8x2");
}

CyclicPacking packing_2x15(Run& run) {
    return run.keep(filling_2(entry<FanDesign>("fg-(2,3)reg-6^5"), entry<CyclicPacking>("small-(2,3)")), "packing-2x15");
}

RoSQS pick_rosqs(const std::optional<RoSQS>& r) { return r ? *r : entry<RoSQS>("rosqs8"); }

using Body = std::function<CyclicPacking(Run&, const std::optional<RoSQS>&)>;

struct Recipe {
    PipelineInfo info;
    Body body;
};

const std::vector<Recipe>& recipes() {
    static const std::vector<Recipe> all = {
        {{"packing-4x2", "fill the strictly 2-cyclic 0-FG of type 4^2 with empty 2x2 packings", 4, 2, false},
         [](Run& run, const auto&) {
             return run.keep(filling_1(entry<FanDesign>("fg-4^2-s2c"), {empty_packing(2, 2)}), "packing-4x2");
         }},
        {{"packing-4x3", "fill the strictly 3-cyclic 0-FG of type 6^2 with the 2x3 packing", 4, 3, false},
         [](Run& run, const auto&) {
             return run.keep(filling_1(entry<FanDesign>("fg-6^2-s3c"), {entry<CyclicPacking>("small-(2,3)")}),
                             "packing-4x3");
         }},
        {{"packing-2x4", "fill the (2,2)-regular 0-FG of type 4^2 with an empty 2x2 packing", 2, 4, false},
         [](Run& run, const auto&) { return packing_2x4(run); }},
        {{"packing-2x8", "fill the (2,4)-regular 0-FG of type 8^2 with the 2x4 packing", 2, 8, false},
         [](Run& run, const auto&) {
             CyclicPacking p = packing_2x4(run);
             return run.keep(filling_2(entry<FanDesign>("fg-(2,4)reg-8^2"), p), "packing-2x8");
         }},
        {{"packing-2x12", "fill the (2,6)-regular 0-FG of type 12^2 with the 2x6 packing", 2, 12, false},
         [](Run& run, const auto&) {
             return run.keep(filling_2(entry<FanDesign>("fg-(2,6)reg-12^2"), entry<CyclicPacking>("small-(2,6)")),
                             "packing-2x12");
         }},
        {{"packing-2x15", "fill the (2,3)-regular 0-FG of type 6^5 with the 2x3 packing", 2, 15, false},
         [](Run& run, const auto&) { return packing_2x15(run); }},
        {{"packing-3x10", "fill the (3,2)-regular 0-FG of type 6^5 with the 3x2 packing", 3, 10, false},
         [](Run& run, const auto&) {
             return run.keep(filling_2(entry<FanDesign>("fg-(3,2)reg-6^5"), entry<CyclicPacking>("small-(3,2)")),
                             "packing-3x10");
         }},
        {{"packing-12x2", "fill the strictly 2-cyclic 0-FG of type 12^2 with the 6x2 packing", 12, 2, false},
         [](Run& run, const auto&) {
             return run.keep(filling_1(entry<FanDesign>("fg-12^2-s2c"), {entry<CyclicPacking>("small-(6,2)")}),
                             "packing-12x2");
         }},
        {{"packing-2x7", "SQS(2 x p) from an RoSQS(p+1)", 2, 7, true},
         [](Run& run, const auto& r) { return run.keep(hartman(pick_rosqs(r)), "packing-2x7"); }},
        {{"packing-8x2",
          "weight the 1-FG of type 1^4 by the 2-cyclic 0-FG of type 4^2 and a 2-cyclic H(4,4,4,3), then fill", 8, 2,
          false},
         [](Run& run, const auto&) { return packing_8x2(run); }},
        {{"packing-8x4",
          "weight the (2,2)-regular 1-FG of type 4^2 by plain type 4^2 fans and a 1-cyclic H(4,4,4,3), then fill "
          "with the 8x2 packing",
          8, 4, false},
         [](Run& run, const auto&) {
             FanDesign master = run.keep(add_pair_layer(entry<FanDesign>("fg-(2,2)reg-4^2")), "1-fg-(2,2)reg-4^2");
             FanDesign fan = run.note(as_cyclic(entry<FanDesign>("fg-plain-4^2")), "fg-4^2-plain");
             HDesign h2 = h4_4_2cyclic(run);
             HDesign h1 = run.keep(restrict_action(h2, 1), "h-4-4-4-3-plain");
             FanDesign fg = run.keep(weighting_2(master, {fan}, {h1}), "fg-(8,2)reg-16^2");
             CyclicPacking filler = packing_8x2(run);
             return run.keep(filling_2(fg, filler), "packing-8x4");
         }},
        {{"packing-6x5", "fold the 2x15 packing by 3", 6, 5, false},
         [](Run& run, const auto&) {
             CyclicPacking p = packing_2x15(run);
             return run.keep(fold(p, 3), "packing-6x5");
         }},
        {{"packing-5x4", "fold a searched 1x20 packing by 5", 5, 4, false},
         [](Run& run, const auto&) {
             CyclicPacking p = run.searched(1, 20);
             return run.keep(fold(p, 5), "packing-5x4");
         }},
        {{"packing-12x7",
          "SQS(2 x p) -> (2,1)-regular 1-FG of type 2^p, weighted by 6 and filled with a searched 12x1 packing", 12, 7,
          true},
         [](Run& run, const auto& r) {
             CyclicPacking sqs = run.keep(hartman(pick_rosqs(r)), "sqs-2xp");
             FanDesign master = run.keep(perfect_to_regular_1fg(sqs), "1-fg-(2,1)reg-2^p");
             FanDesign fan = run.keep(restrict_action(entry<FanDesign>("fg-6^2-s3c"), 1), "fg-6^2-plain");
             HDesign h = h4_6_plain(run);
             FanDesign fg = run.keep(weighting_2(master, {fan}, {h}), "fg-(12,1)reg-12^p");
             CyclicPacking filler = run.searched(12, 1);
             return run.keep(filling_2(fg, filler), "packing-12xp");
         }},
        {{"packing-6x7",
          "RoSQS(v+1) -> 1-FG of type 1^v, weighted by 6 and filled with a searched 6x1 packing", 6, 7, true},
         [](Run& run, const auto& r) {
             FanDesign master = run.keep(rosqs_to_1fg(pick_rosqs(r)), "1-fg-(1,1)reg-1^v");
             FanDesign fan = run.keep(restrict_action(entry<FanDesign>("fg-6^3-s3c"), 1), "fg-6^3-plain");
             HDesign h = h4_6_plain(run);
             FanDesign fg = run.keep(weighting_2(master, {fan}, {h}), "fg-(6,1)reg-6^v");
             CyclicPacking filler = run.searched(6, 1);
             return run.keep(filling_2(fg, filler), "packing-6xv");
         }},
    };
    return all;
}

const Recipe& recipe(const std::string& name) {
    for (const Recipe& r : recipes())
        if (r.info.name == name) return r;
    raise(ErrorKind::not_found, "no pipeline '" + name + "'");
}

}  // namespace

const std::vector<PipelineInfo>& pipelines() {
    static const std::vector<PipelineInfo> infos = [] {
        std::vector<PipelineInfo> out;
        for (const Recipe& r : recipes()) out.push_back(r.info);
        return out;
    }();
    return infos;
}

const PipelineInfo& pipeline_info(const std::string& name) {
    for (const PipelineInfo& p : pipelines())
        if (p.name == name) return p;
    raise(ErrorKind::not_found, "no pipeline '" + name + "'");
}

PipelineRun run_pipeline(const std::string& name, const std::optional<RoSQS>& rosqs) {
    const Recipe& r = recipe(name);
    if (rosqs && !r.info.takes_rosqs) raise(ErrorKind::parameter, "pipeline '" + name + "' takes no RoSQS input");
    Run run(name);
    CyclicPacking p = r.body(run, rosqs);
    return run.finish(std::move(p));
}

}  // namespace ooc
