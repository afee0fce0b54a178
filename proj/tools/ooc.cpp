// Command-line front end over the C API.

#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ooc/ooc.h"

namespace {

using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_fail = 1;
constexpr int exit_error = 2;

struct DesignDeleter {
    void operator()(ooc_design* d) const { ooc_design_free(d); }
};
using DesignPtr = std::unique_ptr<ooc_design, DesignDeleter>;

// Takes ownership of a C string from the library.
std::string take(char* s) {
    std::string out = s ? s : "";
    ooc_string_free(s);
    return out;
}

struct Failure {
    ooc_status status;
};

void check(ooc_status s) {
    if (s == OOC_OK || s == OOC_FAIL) return;
    std::cerr << "ooc: " << ooc_status_name(s) << ": " << ooc_last_error() << "\n";
    throw Failure{s};
}

DesignPtr load(const std::string& source) {
    ooc_design* d = nullptr;
    check(ooc_design_load(source.c_str(), &d));
    return DesignPtr(d);
}

void emit(const ooc_design* d, const std::string& out) {
    if (out.empty() || out == "-") {
        char* s = nullptr;
        check(ooc_design_to_json(d, 2, &s));
        std::cout << take(s) << "\n";
    } else {
        check(ooc_design_save(d, out.c_str()));
    }
}

void print_trace(const json& t, std::ostream& os) {
    os << t.value("recipe", std::string()) << ":\n";
    for (const auto& in : t.value("inputs", json::array())) os << "  input  " << in.get<std::string>() << "\n";
    for (const auto& s : t.value("steps", json::array()))
        os << "  step   " << s["name"].get<std::string>() << ": " << s["blocks"].get<long long>() << "\n";
    if (!t.value("output", std::string()).empty()) os << "  output " << t["output"].get<std::string>() << "\n";
    os << "  total  " << t.value("total", 0LL) << "\n";
}

// Verifies a freshly built design with the check matching its kind.
bool reverify(const ooc_design* d) {
    std::string kind = ooc_design_kind(d);
    std::string chk = kind == "code" ? "ooc" : kind == "hdesign" ? "hdesign" : kind == "fan" ? "fan" : kind == "rosqs" ? "rosqs" : "packing";
    char* rep = nullptr;
    ooc_status s = ooc_verify(d, chk.c_str(), 1, &rep);
    take(rep);
    check(s);
    return s == OOC_OK;
}

int cmd_bound(int u, int v, int k, int lambda, bool as_json) {
    ooc_bound_report r{};
    check(ooc_bound(u, v, k, lambda, &r));
    json j = {{"u", u},
              {"v", v},
              {"k", k},
              {"lambda", lambda},
              {"johnson", r.johnson},
              {"j1", std::to_string(r.j1_num) + (r.j1_den == 1 ? "" : "/" + std::to_string(r.j1_den))},
              {"lifting_equal", r.lifting_equal != 0}};
    if (r.jstar_defined) {
        j["jstar"] = r.jstar;
        j["case"] = r.jstar_case;
        j["perfect_class"] = r.perfect_class;
        j["perfect_size"] = r.perfect_size;
    }
    if (as_json) {
        std::cout << j.dump(2) << "\n";
        return exit_ok;
    }
    std::cout << "johnson=" << r.johnson << " j1=" << j["j1"].get<std::string>()
              << " lifting_equal=" << (r.lifting_equal ? "yes" : "no");
    if (r.jstar_defined)
        std::cout << " jstar=" << r.jstar << " case=" << r.jstar_case << " perfect_class=" << r.perfect_class;
    std::cout << "\n";
    return exit_ok;
}

int cmd_verify(const std::string& file, const std::string& what, bool strict, bool as_json) {
    DesignPtr d = load(file);
    char* rep = nullptr;
    ooc_status s = ooc_verify(d.get(), what.c_str(), strict ? 1 : 0, &rep);
    check(s);
    json r = json::parse(take(rep));
    if (as_json) {
        std::cout << r.dump(2) << "\n";
    } else if (s == OOC_OK) {
        std::cout << "PASS " << what << " (" << ooc_design_kind(d.get()) << ", " << ooc_design_block_count(d.get())
                  << " blocks)\n";
    } else {
        std::cout << "FAIL " << what << ": " << r.value("failure", std::string("check failed")) << "\n";
        if (r.contains("violation")) std::cout << "  witness " << r["violation"].dump() << "\n";
    }
    return s == OOC_OK ? exit_ok : exit_fail;
}

int finish_construct(DesignPtr out, const json& trace, const std::string& out_file, bool as_json) {
    if (!reverify(out.get())) {
        std::cerr << "ooc: constructed design failed verification; not written\n";
        return exit_fail;
    }
    bool to_stdout = out_file.empty() || out_file == "-";
    std::ostream& log = to_stdout ? std::cerr : std::cout;
    if (as_json) log << trace.dump(2) << "\n";
    else if (trace.contains("traces")) {
        for (const auto& t : trace["traces"]) print_trace(t, log);
        log << trace["pipeline"].get<std::string>() << ": " << trace["total"].get<long long>()
            << " base blocks (jstar " << trace["jstar"].get<long long>() << ")\n";
    } else {
        print_trace(trace, log);
    }
    emit(out.get(), out_file);
    return exit_ok;
}

int cmd_construct(const std::string& recipe, const std::vector<std::string>& inputs,
                  const std::vector<std::string>& options, const std::string& rosqs, const std::string& out_file,
                  bool as_json) {
    if (recipe == "pipeline") {
        if (inputs.size() != 1) {
            std::cerr << "ooc: construct pipeline takes one name (or 'list')\n";
            return exit_error;
        }
        if (inputs[0] == "list") {
            char* s = nullptr;
            check(ooc_pipeline_list(&s));
            json list = json::parse(take(s));
            if (as_json) std::cout << list.dump(2) << "\n";
            else
                for (const auto& p : list)
                    std::cout << p["name"].get<std::string>() << "  " << p["description"].get<std::string>() << "\n";
            return exit_ok;
        }
        DesignPtr r;
        if (!rosqs.empty()) r = load(rosqs);
        ooc_design* out = nullptr;
        char* trace = nullptr;
        check(ooc_pipeline(inputs[0].c_str(), r.get(), &out, &trace));
        return finish_construct(DesignPtr(out), json::parse(take(trace)), out_file, as_json);
    }
    std::vector<DesignPtr> owned;
    std::vector<const ooc_design*> ptrs;
    for (const std::string& in : inputs) {
        owned.push_back(load(in));
        ptrs.push_back(owned.back().get());
    }
    std::string opts;
    for (const std::string& o : options) opts += o + " ";
    ooc_design* out = nullptr;
    char* trace = nullptr;
    check(ooc_construct(recipe.c_str(), ptrs.data(), ptrs.size(), opts.c_str(), &out, &trace));
    return finish_construct(DesignPtr(out), json::parse(take(trace)), out_file, as_json);
}

int cmd_search(int u, int v, int k, int t, long long budget, bool no_jstar, bool row_filter, const std::string& out_file,
               bool as_json) {
    ooc_search_options o;
    ooc_search_defaults(&o);
    if (budget > 0) o.node_budget = budget;
    o.use_jstar = no_jstar ? 0 : 1;
    o.row_filter = row_filter ? 1 : 0;
    ooc_design* w = nullptr;
    char* res = nullptr;
    check(ooc_search(u, v, k, t, &o, &w, &res));
    DesignPtr witness(w);
    json r = json::parse(take(res));
    if (as_json) std::cout << r.dump(2) << "\n";
    else
        std::cout << "max=" << r["max_blocks"].get<int>() << " " << (r["proved_optimal"].get<bool>() ? "proved" : "unproved")
                  << " nodes=" << r["nodes_explored"].get<long long>()
                  << (r["budget_exhausted"].get<bool>() ? " budget_exhausted" : "") << "\n";
    if (!out_file.empty()) emit(witness.get(), out_file);
    return exit_ok;
}

int cmd_convert(const std::string& file, const std::string& to, const std::string& out_file) {
    DesignPtr d = load(file);
    ooc_design* out = nullptr;
    check(ooc_convert(d.get(), to.c_str(), &out));
    DesignPtr o(out);
    emit(o.get(), out_file);
    return exit_ok;
}

int cmd_catalog_list(bool as_json) {
    char* s = nullptr;
    check(ooc_catalog_list(&s));
    json list = json::parse(take(s));
    if (as_json) {
        std::cout << list.dump(2) << "\n";
        return exit_ok;
    }
    for (const auto& e : list)
        std::cout << e["id"].get<std::string>() << "  [" << e["kind"].get<std::string>() << ", "
                  << e["base_blocks"].get<long long>() << " base blocks, " << e["action"].get<std::string>() << "]  "
                  << e["description"].get<std::string>() << "\n";
    return exit_ok;
}

int cmd_catalog_emit(const std::string& id, const std::string& out_file) {
    DesignPtr d = load("catalog:" + id);
    emit(d.get(), out_file);
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-dimensional optical orthogonal codes (k = 4, lambda = 2): bounds, verifiers, constructions, search"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");

    int u = 0, v = 0, k = 4, lambda = 2, t = 3;

    auto* bound = app.add_subcommand("bound", "Johnson bound, jstar, and perfect-code admissibility");
    bound->add_option("u", u)->required();
    bound->add_option("v", v)->required();
    bound->add_option("k", k, "weight")->capture_default_str();
    bound->add_option("lambda", lambda, "correlation constraint")->capture_default_str();
    bound->add_flag("--json", as_json);

    std::string file, what;
    bool strict = false;
    auto* verify = app.add_subcommand("verify", "check a design file (exit 0 pass, 1 fail, 2 error)");
    verify->add_option("file", file, "path or catalog:<id>")->required();
    verify->add_option("check", what)->required()->check(CLI::IsMember({"ooc", "packing", "perfect", "fan", "hdesign", "rosqs"}));
    verify->add_flag("--strict", strict, "fail on non-strict cyclicity");
    verify->add_flag("--json", as_json);

    std::string recipe, out_file, rosqs;
    std::vector<std::string> inputs, options;
    auto* construct = app.add_subcommand("construct", "run a construction or a named pipeline");
    construct->add_option("recipe", recipe,
                          "hartman, filling1, filling2, weighting1, weighting2, weighting3, fold, remap, semicyclic-h4, "
                          "or pipeline")
        ->required();
    construct->add_option("inputs", inputs, "input designs (path or catalog:<id>); for pipeline, its name or 'list'");
    construct->add_option("-o,--opt", options, "key=value recipe option (v1=, map=, h1=, h=)");
    construct->add_option("--rosqs", rosqs, "RoSQS replacing the shipped one in pipelines that take it");
    construct->add_option("--out", out_file, "output file (default: stdout)");
    construct->add_flag("--json", as_json);

    long long budget = 0;
    bool no_jstar = false, row_filter = false;
    auto* search = app.add_subcommand("search", "exact maximum strictly cyclic packing");
    search->add_option("u", u)->required();
    search->add_option("v", v)->required();
    search->add_option("k", k)->capture_default_str();
    search->add_option("t", t)->capture_default_str();
    search->add_option("--budget", budget, "node budget (default 1e8)");
    search->add_flag("--no-jstar", no_jstar, "do not stop at jstar (certify without the bound)");
    search->add_flag("--row-filter", row_filter, "branch on one root block per symmetry class");
    search->add_option("--out", out_file, "write the witness packing");
    search->add_flag("--json", as_json);

    std::string to;
    auto* convert = app.add_subcommand("convert", "packing <-> codeword matrices");
    convert->add_option("file", file)->required();
    convert->add_option("--to", to)->required()->check(CLI::IsMember({"matrix", "blocks"}));
    convert->add_option("--out", out_file);

    std::string id;
    auto* cat = app.add_subcommand("catalog", "shipped designs");
    cat->require_subcommand(1);
    auto* list = cat->add_subcommand("list", "list catalog entries");
    list->add_flag("--json", as_json);
    auto* emit_cmd = cat->add_subcommand("emit", "write a catalog entry as a design file");
    emit_cmd->add_option("id", id)->required();
    emit_cmd->add_option("--out", out_file);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_error;
    }

    try {
        if (*bound) return cmd_bound(u, v, k, lambda, as_json);
        if (*verify) return cmd_verify(file, what, strict, as_json);
        if (*construct) return cmd_construct(recipe, inputs, options, rosqs, out_file, as_json);
        if (*search) return cmd_search(u, v, k, t, budget, no_jstar, row_filter, out_file, as_json);
        if (*convert) return cmd_convert(file, to, out_file);
        if (*list) return cmd_catalog_list(as_json);
        if (*emit_cmd) return cmd_catalog_emit(id, out_file);
    } catch (const Failure&) {
        return exit_error;
    } catch (const std::exception& e) {
        std::cerr << "ooc: " << e.what() << "\n";
        return exit_error;
    }
    return exit_error;
}
