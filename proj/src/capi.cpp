#include "ooc/ooc.h"

#include <cstring>
#include <map>
#include <sstream>

#include "json.hpp"
#include "ooc/bounds.hpp"
#include "ooc/catalog.hpp"
#include "ooc/constructs.hpp"
#include "ooc/correlation.hpp"
#include "ooc/packing.hpp"
#include "ooc/pipelines.hpp"
#include "ooc/search.hpp"

struct ooc_design {
    ooc::Design d;
};

namespace {

using nlohmann::json;
using namespace ooc;

thread_local std::string last_error;

ooc_status status_of(ErrorKind k) {
    switch (k) {
        case ErrorKind::coordinate: return OOC_ERR_COORDINATE;
        case ErrorKind::shape: return OOC_ERR_SHAPE;
        case ErrorKind::parameter: return OOC_ERR_PARAMETER;
        case ErrorKind::precondition: return OOC_ERR_PRECONDITION;
        case ErrorKind::parse: return OOC_ERR_PARSE;
        case ErrorKind::not_found: return OOC_ERR_NOT_FOUND;
        case ErrorKind::internal: return OOC_ERR_INTERNAL;
    }
    return OOC_ERR_INTERNAL;
}

template <class F>
ooc_status guard(F&& f) {
    try {
        last_error.clear();
        ooc_status s = f();
        return s;
    } catch (const Error& e) {
        last_error = e.what();
        return status_of(e.kind());
    } catch (const json::exception& e) {
        last_error = e.what();
        return OOC_ERR_PARSE;
    } catch (const std::exception& e) {
        last_error = e.what();
        return OOC_ERR_INTERNAL;
    }
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) raise(ErrorKind::internal, "out of memory");
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

void put(char** out, const json& j) {
    if (out) *out = dup(j.dump());
}

void need(const void* p, const char* what) {
    if (!p) raise(ErrorKind::parameter, std::string(what) + " is NULL");
}

ooc_design* wrap(Design d) { return new ooc_design{std::move(d)}; }

json points(const std::vector<Point>& ps) {
    json a = json::array();
    for (const Point& p : ps) a.push_back({p.row, p.col});
    return a;
}

json trace_json(const Trace& t) {
    json steps = json::array();
    for (const TraceStep& s : t.steps) steps.push_back({{"name", s.name}, {"blocks", s.blocks}});
    return {{"recipe", t.recipe}, {"inputs", t.inputs}, {"steps", steps}, {"output", t.output}, {"total", t.total}};
}

std::map<std::string, std::string> parse_options(const char* text) {
    std::map<std::string, std::string> out;
    if (!text) return out;
    std::string s(text);
    for (char& c : s)
        if (c == ',') c = ' ';
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos || eq == 0) raise(ErrorKind::parameter, "option '" + tok + "' is not key=value");
        out[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return out;
}

int int_option(const std::map<std::string, std::string>& opts, const std::string& key) {
    auto it = opts.find(key);
    if (it == opts.end()) raise(ErrorKind::parameter, "missing option " + key + "=N");
    try {
        std::size_t pos = 0;
        int v = std::stoi(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::logic_error&) {
        raise(ErrorKind::parameter, "option " + key + " must be an integer");
    }
}

CyclicPacking as_packing(const Design& d) {
    if (auto p = std::get_if<CyclicPacking>(&d)) return *p;
    if (auto c = std::get_if<Code>(&d)) return to_packing(*c);
    raise(ErrorKind::parameter, std::string("expected a packing or code, got ") + kind_of(d));
}

template <class T>
const T& as(const Design& d, const char* what) {
    if (auto p = std::get_if<T>(&d)) return *p;
    raise(ErrorKind::parameter, std::string("expected ") + what + ", got " + kind_of(d));
}

json action_json(const ActionReport& a) {
    return {{"ok", a.ok}, {"invariant", a.invariant}, {"strict", a.strict}, {"failure", a.failure}};
}

// Fills `r` and returns whether the design passes.
bool verify_into(const Design& d, const std::string& check, bool strict, json& r) {
    r["check"] = check;
    r["kind"] = kind_of(d);
    if (check == "packing" || check == "perfect") {
        CyclicPacking p = as_packing(d);
        auto rep = verify_packing(p);
        r["valid"] = rep.valid;
        r["strictly_cyclic"] = rep.strictly_cyclic;
        r["base_blocks"] = p.base_blocks.size();
        r["orbit_lengths"] = rep.orbit_lengths;
        r["developed_blocks"] = rep.developed_blocks;
        if (rep.valid) r["leave_size"] = rep.leave_size;
        if (rep.violation) {
            r["violation"] = points(*rep.violation);
            r["violation_multiplicity"] = rep.violation_count;
            r["failure"] = "a " + std::to_string(p.t) + "-subset is covered " + std::to_string(rep.violation_count) + " times";
        } else if (!rep.strictly_cyclic) {
            r["failure"] = "a base block has a short orbit";
        }
        bool ok = rep.valid && (rep.strictly_cyclic || !strict);
        if (check == "perfect") {
            bool perfect = is_perfect(p);
            r["perfect"] = perfect;
            if (!perfect && !r.contains("failure")) r["failure"] = "leave is not empty";
            ok = perfect;
        }
        return ok;
    }
    if (check == "ooc") {
        Code c = std::holds_alternative<Code>(d) ? std::get<Code>(d) : to_code(as_packing(d));
        auto rep = verify_ooc(c);
        r["codewords"] = c.codewords.size();
        r["lambda"] = c.lambda;
        r["worst_correlation"] = rep.worst_value;
        if (rep.witness) {
            const auto& w = *rep.witness;
            r["violation"] = {{"first", w.first}, {"second", w.second}, {"shift", w.shift}, {"value", w.value}};
            r["failure"] = "correlation " + std::to_string(w.value) + " between codewords " + std::to_string(w.first) +
                           " and " + std::to_string(w.second) + " at shift " + std::to_string(w.shift);
        }
        return rep.ok;
    }
    if (check == "fan") {
        const FanDesign& f = as<FanDesign>(d, "a fan design");
        auto rep = verify_fan(f);
        r["partition_ok"] = rep.partition_ok;
        r["layers_ok"] = rep.layers_ok;
        r["three_design_ok"] = rep.three_design_ok;
        r["base_blocks"] = f.base_count();
        if (!rep.ok) r["failure"] = rep.failure, r["violation"] = rep.witness;
        bool ok = rep.ok;
        if (f.universe.shape() != Shape::plain) {
            auto a = f.universe.shape() == Shape::cyclic ? verify_h_cyclic(f, strict) : verify_regular(f, strict);
            r["action"] = action_json(a);
            if (!a.ok && ok) r["failure"] = a.failure;
            ok = ok && a.ok;
        }
        return ok;
    }
    if (check == "hdesign") {
        const HDesign& h = as<HDesign>(d, "an H design");
        auto rep = verify_h_design(h);
        r["transversal"] = rep.transversal;
        r["coverage_ok"] = rep.coverage_ok;
        r["base_blocks"] = h.blocks.size();
        if (!rep.ok) r["failure"] = rep.failure, r["violation"] = rep.witness;
        bool ok = rep.ok;
        if (h.universe.shape() == Shape::cyclic) {
            auto a = verify_h_cyclic(h, strict);
            r["action"] = action_json(a);
            if (!a.ok && ok) r["failure"] = a.failure;
            ok = ok && a.ok;
        }
        return ok;
    }
    if (check == "rosqs") {
        auto rep = verify_rosqs(as<RoSQS>(d, "an RoSQS"));
        if (!rep.ok) r["failure"] = rep.failure, r["violation"] = rep.witness;
        return rep.ok;
    }
    raise(ErrorKind::parameter, "unknown check '" + check + "'");
}

struct Output {
    Design design;
    json trace;
};

template <class T>
Output built(Built<T> b) {
    return {std::move(b.design), trace_json(b.trace)};
}

Output construct(const std::string& recipe, const std::vector<const Design*>& in,
                 const std::map<std::string, std::string>& opts) {
    auto count = [&](std::size_t lo, std::size_t hi) {
        if (in.size() < lo || in.size() > hi)
            raise(ErrorKind::parameter, recipe + " takes " + std::to_string(lo) +
                                            (hi == lo ? "" : hi == SIZE_MAX ? " or more" : "-" + std::to_string(hi)) +
                                            " inputs");
    };
    if (recipe == "hartman") {
        count(1, 1);
        return built(hartman(as<RoSQS>(*in[0], "an RoSQS")));
    }
    if (recipe == "filling1") {
        count(1, SIZE_MAX);
        std::vector<CyclicPacking> fillers;
        for (std::size_t i = 1; i < in.size(); ++i) fillers.push_back(as_packing(*in[i]));
        return built(filling_1(as<FanDesign>(*in[0], "a fan design"), fillers));
    }
    if (recipe == "filling2") {
        count(2, 2);
        return built(filling_2(as<FanDesign>(*in[0], "a fan design"), as_packing(*in[1])));
    }
    if (recipe == "weighting1" || recipe == "weighting2") {
        count(2, SIZE_MAX);
        std::vector<FanDesign> fans;
        std::vector<HDesign> hs;
        for (std::size_t i = 1; i < in.size(); ++i) {
            if (auto f = std::get_if<FanDesign>(in[i])) fans.push_back(*f);
            else hs.push_back(as<HDesign>(*in[i], "a fan or H design"));
        }
        const FanDesign& m = as<FanDesign>(*in[0], "a fan design");
        return built(recipe == "weighting1" ? weighting_1(m, fans, hs) : weighting_2(m, fans, hs));
    }
    if (recipe == "weighting3") {
        count(2, SIZE_MAX);
        std::vector<HDesign> hs;
        for (std::size_t i = 1; i < in.size(); ++i) hs.push_back(as<HDesign>(*in[i], "an H design"));
        return built(weighting_3(as<HDesign>(*in[0], "an H design"), hs));
    }
    if (recipe == "fold") {
        count(1, 1);
        auto b = fold(as_packing(*in[0]), int_option(opts, "v1"));
        Output o = built(std::move(b));
        if (std::holds_alternative<Code>(*in[0])) o.design = to_code(std::get<CyclicPacking>(o.design));
        return o;
    }
    if (recipe == "remap") {
        count(1, 1);
        auto it = opts.find("map");
        if (it == opts.end()) raise(ErrorKind::parameter, "remap needs map=NAME");
        const std::string& m = it->second;
        const Design& d = *in[0];
        if (m == "semicyclic-to-vcyclic") return built(semicyclic_to_vcyclic(as<FanDesign>(d, "a fan design")));
        if (m == "regular-to-h1cyclic")
            return built(regular_to_h1cyclic(as<FanDesign>(d, "a fan design"), int_option(opts, "h1")));
        if (m == "restrict") {
            if (auto h = std::get_if<HDesign>(&d)) return built(restrict_action(*h, int_option(opts, "h1")));
            return built(restrict_action(as<FanDesign>(d, "a fan or H design"), int_option(opts, "h1")));
        }
        if (m == "perfect-to-regular-1fg") return built(perfect_to_regular_1fg(as_packing(d)));
        if (m == "rosqs-to-1fg") return built(rosqs_to_1fg(as<RoSQS>(d, "an RoSQS")));
        if (m == "add-pair-layer") return built(add_pair_layer(as<FanDesign>(d, "a fan design")));
        if (m == "as-cyclic") {
            Trace t{"as-cyclic", {}, {}, "", 0};
            if (auto h = std::get_if<HDesign>(&d)) {
                HDesign r = as_cyclic(*h);
                t.total = static_cast<long long>(r.blocks.size());
                return {r, trace_json(t)};
            }
            FanDesign r = as_cyclic(as<FanDesign>(d, "a fan or H design"));
            t.total = static_cast<long long>(r.base_count());
            return {r, trace_json(t)};
        }
        raise(ErrorKind::parameter, "unknown map '" + m + "'");
    }
    if (recipe == "semicyclic-h4") {
        count(0, 0);
        HDesign h = semicyclic_h4(int_option(opts, "h"));
        Trace t{"semicyclic-h4", {}, {{"base blocks", static_cast<long long>(h.blocks.size())}}, "", 0};
        t.total = static_cast<long long>(h.blocks.size());
        return {h, trace_json(t)};
    }
    raise(ErrorKind::parameter, "unknown recipe '" + recipe + "'");
}

}  // namespace

extern "C" {

const char* ooc_last_error(void) { return last_error.c_str(); }

const char* ooc_status_name(ooc_status s) {
    switch (s) {
        case OOC_OK: return "ok";
        case OOC_FAIL: return "fail";
        case OOC_ERR_PARSE: return "parse error";
        case OOC_ERR_PARAMETER: return "parameter error";
        case OOC_ERR_PRECONDITION: return "precondition error";
        case OOC_ERR_NOT_FOUND: return "not found";
        case OOC_ERR_SHAPE: return "shape error";
        case OOC_ERR_COORDINATE: return "coordinate error";
        case OOC_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

void ooc_string_free(char* s) { std::free(s); }

ooc_status ooc_design_load(const char* source, ooc_design** out) {
    return guard([&] {
        need(source, "source");
        need(out, "out");
        *out = wrap(load_design(source));
        return OOC_OK;
    });
}

ooc_status ooc_design_parse(const char* text, ooc_design** out) {
    return guard([&] {
        need(text, "json");
        need(out, "out");
        *out = wrap(parse_design(text));
        return OOC_OK;
    });
}

void ooc_design_free(ooc_design* d) { delete d; }

ooc_status ooc_design_to_json(const ooc_design* d, int indent, char** out) {
    return guard([&] {
        need(d, "design");
        need(out, "out");
        *out = dup(serialize_design(d->d, indent));
        return OOC_OK;
    });
}

ooc_status ooc_design_save(const ooc_design* d, const char* path) {
    return guard([&] {
        need(d, "design");
        need(path, "path");
        save_design(d->d, path);
        return OOC_OK;
    });
}

const char* ooc_design_kind(const ooc_design* d) { return d ? kind_of(d->d) : nullptr; }

long ooc_design_block_count(const ooc_design* d) { return d ? static_cast<long>(block_count(d->d)) : -1; }

ooc_status ooc_bound(int u, int v, int k, int lambda, ooc_bound_report* out) {
    return guard([&] {
        need(out, "out");
        if (u < 1 || v < 1 || k < 2 || lambda < 1 || lambda >= k)
            raise(ErrorKind::parameter, "need u, v >= 1 and 1 <= lambda < k");
        ooc_bound_report r{};
        r.johnson = johnson(u, v, k, lambda);
        Rational q = j1(u * v, k, lambda);
        r.j1_num = q.num;
        r.j1_den = q.den;
        r.lifting_equal = lifting_equal(u, v, k, lambda) ? 1 : 0;
        r.jstar_defined = (k == 4 && lambda == 2) ? 1 : 0;
        const char* cls = "n/a";
        if (r.jstar_defined) {
            JStar js = jstar(u, v);
            r.jstar = js.value;
            std::snprintf(r.jstar_case, sizeof r.jstar_case, "%s", to_string(js.which));
            cls = to_string(perfect_class(u, v));
            r.perfect_size = perfect_size(u, v);
        } else {
            r.jstar = r.johnson;
            std::snprintf(r.jstar_case, sizeof r.jstar_case, "n/a");
        }
        std::snprintf(r.perfect_class, sizeof r.perfect_class, "%s", cls);
        *out = r;
        return OOC_OK;
    });
}

ooc_status ooc_verify(const ooc_design* d, const char* check, int strict, char** report_json) {
    return guard([&] {
        need(d, "design");
        need(check, "check");
        json r;
        bool ok = verify_into(d->d, check, strict != 0, r);
        r["ok"] = ok;
        r["strict"] = strict != 0;
        put(report_json, r);
        return ok ? OOC_OK : OOC_FAIL;
    });
}

ooc_status ooc_construct(const char* recipe, const ooc_design* const* inputs, size_t n_inputs, const char* options,
                         ooc_design** out, char** trace_json) {
    return guard([&] {
        need(recipe, "recipe");
        need(out, "out");
        if (n_inputs) need(inputs, "inputs");
        std::vector<const Design*> in;
        for (size_t i = 0; i < n_inputs; ++i) {
            need(inputs[i], "input design");
            in.push_back(&inputs[i]->d);
        }
        Output o = construct(recipe, in, parse_options(options));
        put(trace_json, o.trace);
        *out = wrap(std::move(o.design));
        return OOC_OK;
    });
}

ooc_status ooc_pipeline(const char* name, const ooc_design* rosqs, ooc_design** out, char** trace_json) {
    return guard([&] {
        need(name, "name");
        need(out, "out");
        std::optional<RoSQS> r;
        if (rosqs) r = as<RoSQS>(rosqs->d, "an RoSQS");
        PipelineRun run = run_pipeline(name, r);
        json traces = json::array(), stages = json::array();
        for (const Trace& t : run.traces) traces.push_back(::trace_json(t));
        for (const auto& [n, d] : run.stages)
            stages.push_back({{"name", n}, {"kind", kind_of(d)}, {"blocks", block_count(d)}});
        put(trace_json, {{"pipeline", run.name},
                         {"u", run.packing.u},
                         {"v", run.packing.v},
                         {"total", run.packing.base_blocks.size()},
                         {"jstar", jstar(run.packing.u, run.packing.v).value},
                         {"stages", stages},
                         {"traces", traces}});
        *out = wrap(std::move(run.packing));
        return OOC_OK;
    });
}

ooc_status ooc_pipeline_list(char** out) {
    return guard([&] {
        need(out, "out");
        json a = json::array();
        for (const PipelineInfo& p : pipelines())
            a.push_back({{"name", p.name},
                         {"description", p.description},
                         {"u", p.u},
                         {"v", p.v},
                         {"takes_rosqs", p.takes_rosqs}});
        put(out, a);
        return OOC_OK;
    });
}

void ooc_search_defaults(ooc_search_options* opts) {
    if (!opts) return;
    SearchOptions d;
    opts->node_budget = d.node_budget;
    opts->use_jstar = d.use_jstar;
    opts->row_filter = d.row_filter;
}

ooc_status ooc_search(int u, int v, int k, int t, const ooc_search_options* opts, ooc_design** witness,
                      char** result_json) {
    return guard([&] {
        SearchOptions o;
        if (opts) {
            o.node_budget = opts->node_budget;
            o.use_jstar = opts->use_jstar != 0;
            o.row_filter = opts->row_filter != 0;
        }
        SearchResult r = max_packing(u, v, k, t, o);
        put(result_json, {{"u", u},
                          {"v", v},
                          {"k", k},
                          {"t", t},
                          {"max_blocks", r.max_blocks},
                          {"proved_optimal", r.proved_optimal},
                          {"nodes_explored", r.nodes_explored},
                          {"budget_exhausted", r.budget_exhausted},
                          {"upper_bound", r.upper_bound}});
        if (witness) *witness = wrap(std::move(r.witness));
        return OOC_OK;
    });
}

ooc_status ooc_convert(const ooc_design* d, const char* to, ooc_design** out) {
    return guard([&] {
        need(d, "design");
        need(to, "to");
        need(out, "out");
        std::string target(to);
        if (target == "matrix") *out = wrap(to_code(as_packing(d->d)));
        else if (target == "blocks") *out = wrap(as_packing(d->d));
        else raise(ErrorKind::parameter, "convert target must be 'matrix' or 'blocks'");
        return OOC_OK;
    });
}

ooc_status ooc_catalog_list(char** out) {
    return guard([&] {
        need(out, "out");
        json a = json::array();
        for (const CatalogEntry& e : catalog())
            a.push_back({{"id", e.id},
                         {"kind", kind_of(e.design)},
                         {"action", e.action},
                         {"base_blocks", block_count(e.design)},
                         {"listed_blocks", e.listed_count},
                         {"description", e.description}});
        put(out, a);
        return OOC_OK;
    });
}

}  // extern "C"
