#include "ooc/design_file.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "ooc/catalog.hpp"

namespace ooc {

using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

[[noreturn]] void bad(const std::string& msg) { raise(ErrorKind::parse, msg); }

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
    return j.at(key);
}

int int_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer()) bad(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

std::vector<int> int_list(const json& j) {
    if (!j.is_array()) bad("expected an array of integers");
    std::vector<int> out;
    for (const json& e : j) {
        if (!e.is_number_integer()) bad("expected an integer");
        out.push_back(e.get<int>());
    }
    return out;
}

// ------------------------------------------------------------ presentation
// Integer-labelled listing on I_N, developed under permutation generators and
// carried to tuple coordinates by a mixed-radix split of each label.

struct Presentation {
    int points = 0;
    std::vector<std::vector<int>> group_elements;
    std::vector<int> radix;
    std::vector<std::vector<int>> groups;
};

Presentation read_presentation(const json& p) {
    Presentation pr;
    pr.points = int_field(p, "points");
    if (pr.points < 1) bad("presentation needs a positive point count");
    std::vector<std::vector<int>> gens;
    if (p.contains("generators")) {
        for (const json& g : p.at("generators")) {
            std::vector<int> perm(pr.points);
            for (int i = 0; i < pr.points; ++i) perm[i] = i;
            for (const json& cycle : g) {
                auto c = int_list(cycle);
                for (std::size_t i = 0; i < c.size(); ++i) {
                    if (c[i] < 0 || c[i] >= pr.points) bad("generator point out of range");
                    perm[c[i]] = c[(i + 1) % c.size()];
                }
            }
            gens.push_back(std::move(perm));
        }
    }
    std::vector<int> id(pr.points);
    for (int i = 0; i < pr.points; ++i) id[i] = i;
    std::set<std::vector<int>> seen{id};
    pr.group_elements.push_back(id);
    for (std::size_t i = 0; i < pr.group_elements.size(); ++i) {
        for (const auto& g : gens) {
            std::vector<int> h(pr.points);
            for (int x = 0; x < pr.points; ++x) h[x] = g[pr.group_elements[i][x]];
            if (seen.insert(h).second) {
                pr.group_elements.push_back(h);
                if (pr.group_elements.size() > 100000) bad("presentation group too large");
            }
        }
    }
    pr.radix = int_list(field(p, "radix"));
    long long prod = 1;
    for (int r : pr.radix) {
        if (r < 1) bad("radix entries must be positive");
        prod *= r;
    }
    if (prod != pr.points) bad("radix does not multiply to the point count");
    if (p.contains("groups"))
        for (const json& g : p.at("groups")) pr.groups.push_back(int_list(g));
    return pr;
}

std::vector<int> split(const Presentation& pr, int label) {
    if (label < 0 || label >= pr.points) bad("label " + std::to_string(label) + " out of range");
    std::vector<int> digits(pr.radix.size());
    for (int i = static_cast<int>(pr.radix.size()) - 1; i >= 0; --i) {
        digits[i] = label % pr.radix[i];
        label /= pr.radix[i];
    }
    return digits;
}

std::vector<std::vector<int>> develop_labels(const Presentation& pr, const std::vector<std::vector<int>>& blocks) {
    std::set<std::vector<int>> all;
    for (const auto& b : blocks)
        for (const auto& g : pr.group_elements) {
            std::vector<int> img;
            for (int x : b) {
                if (x < 0 || x >= pr.points) bad("label " + std::to_string(x) + " out of range");
                img.push_back(g[x]);
            }
            std::sort(img.begin(), img.end());
            all.insert(img);
        }
    return {all.begin(), all.end()};
}

std::vector<std::vector<int>> label_blocks(const json& j) {
    std::vector<std::vector<int>> out;
    if (!j.is_array()) bad("expected a list of blocks");
    for (const json& b : j) out.push_back(int_list(b));
    return out;
}

// ------------------------------------------------------------ shapes

Universe read_universe(const json& params, const json& root) {
    std::string shape = params.value("shape", "");
    if (shape == "plain") {
        int n = int_field(params, "points");
        std::vector<std::vector<int>> groups;
        for (const json& g : field(root, "groups")) groups.push_back(int_list(g));
        return Universe::plain(n, groups);
    }
    if (shape == "cyclic") return Universe::cyclic(int_list(field(params, "group_rows")), int_field(params, "h"));
    if (shape == "regular") return Universe::regular(int_field(params, "u"), int_field(params, "v"), int_field(params, "h"));
    bad("unknown shape '" + shape + "'");
}

Block read_block(const json& b, const Universe& u) {
    if (!b.is_array()) bad("block must be an array");
    Block out;
    for (const json& p : b) {
        if (p.is_number_integer())
            out.push_back(u.id({p.get<int>()}));
        else
            out.push_back(u.id(int_list(p)));
    }
    return normalize(std::move(out), u);
}

std::vector<Block> read_blocks(const json& j, const Universe& u) {
    if (!j.is_array()) bad("expected a list of blocks");
    std::vector<Block> out;
    for (const json& b : j) out.push_back(read_block(b, u));
    return out;
}

std::vector<Block> present_blocks(const Presentation& pr, const json& j, const Universe& u) {
    std::vector<Block> out;
    for (const auto& b : develop_labels(pr, label_blocks(j))) {
        Block m;
        for (int x : b) m.push_back(u.id(split(pr, x)));
        out.push_back(normalize(std::move(m), u));
    }
    return out;
}

void check_presented_groups(const Presentation& pr, const Universe& u) {
    if (pr.groups.empty()) return;
    std::set<std::vector<int>> want;
    for (const auto& g : u.groups()) want.insert(g);
    std::set<std::vector<int>> got;
    for (const auto& g : pr.groups) {
        std::vector<int> m;
        for (int x : g) m.push_back(u.id(split(pr, x)));
        std::sort(m.begin(), m.end());
        got.insert(m);
    }
    if (got != want) raise(ErrorKind::shape, "presented groups do not match the declared point set");
}

json write_point(int id, const Universe& u) {
    auto c = u.coords(id);
    if (c.size() == 1) return c[0];
    return c;
}

json write_blocks(const std::vector<Block>& blocks, const Universe& u) {
    json out = json::array();
    for (const Block& b : blocks) {
        json jb = json::array();
        for (int p : b) jb.push_back(write_point(p, u));
        out.push_back(jb);
    }
    return out;
}

json write_universe(const Universe& u, json& root) {
    json p;
    switch (u.shape()) {
        case Shape::plain:
            p["shape"] = "plain";
            p["points"] = u.size();
            root["groups"] = u.groups();
            break;
        case Shape::cyclic:
            p["shape"] = "cyclic";
            p["group_rows"] = u.group_rows();
            p["h"] = u.h();
            break;
        case Shape::regular:
            p["shape"] = "regular";
            p["u"] = u.u();
            p["v"] = u.v();
            p["h"] = u.h();
            break;
    }
    return p;
}

// ------------------------------------------------------------ kinds

Design read_packing(const json& root) {
    const json& params = field(root, "parameters");
    CyclicPacking p;
    p.u = int_field(params, "u");
    p.v = int_field(params, "v");
    p.k = params.value("k", 4);
    p.t = params.value("t", 3);
    if (p.u < 1 || p.v < 1) raise(ErrorKind::parameter, "u and v must be positive");
    const json& blocks = field(root, "base_blocks");
    if (root.contains("presentation")) {
        Presentation pr = read_presentation(root.at("presentation"));
        if (pr.radix.size() != 2 || pr.radix[0] != p.u || pr.radix[1] != p.v) bad("packing presentation radix must be [u, v]");
        std::set<BaseBlock> all;
        for (const auto& b : develop_labels(pr, label_blocks(blocks))) {
            std::vector<Point> pts;
            for (int x : b) pts.push_back({x / p.v, x % p.v});
            all.insert(make_block(std::move(pts), p.u, p.v));
        }
        std::set<BaseBlock> reps;
        for (const BaseBlock& b : all) {
            for (const BaseBlock& img : develop(b, p.v))
                if (!all.count(img)) raise(ErrorKind::precondition, "presented packing is not cyclic in its columns");
            reps.insert(canonicalize(b, p.v));
        }
        p.base_blocks.assign(reps.begin(), reps.end());
    } else {
        for (const json& b : blocks) {
            std::vector<Point> pts;
            for (const json& q : b) {
                auto c = int_list(q);
                if (c.size() != 2) bad("packing points are [row, col] pairs");
                pts.push_back({c[0], c[1]});
            }
            p.base_blocks.push_back(make_block(std::move(pts), p.u, p.v));
        }
    }
    check_shape(p);
    return p;
}

Design read_code(const json& root) {
    const json& params = field(root, "parameters");
    Code c;
    c.u = int_field(params, "u");
    c.v = int_field(params, "v");
    c.k = params.value("k", 4);
    c.lambda = params.value("lambda", 2);
    for (const json& cw : field(root, "codewords")) {
        CodewordMatrix m(c.u, c.v);
        if (!cw.is_array() || static_cast<int>(cw.size()) != c.u) raise(ErrorKind::shape, "codeword must have u rows");
        for (int i = 0; i < c.u; ++i) {
            if (!cw[i].is_string()) bad("codeword rows are 0/1 strings");
            std::string row = cw[i].get<std::string>();
            if (static_cast<int>(row.size()) != c.v) raise(ErrorKind::shape, "codeword row must have v entries");
            for (int j = 0; j < c.v; ++j) {
                if (row[j] != '0' && row[j] != '1') bad("codeword rows are 0/1 strings");
                m.set(i, j, row[j] == '1');
            }
        }
        c.codewords.push_back(std::move(m));
    }
    return c;
}

Design read_fan(const json& root) {
    const json& params = field(root, "parameters");
    std::unique_ptr<Presentation> pr;
    if (root.contains("presentation")) pr = std::make_unique<Presentation>(read_presentation(root.at("presentation")));
    FanDesign d;
    d.universe = read_universe(params, root);
    d.developed = root.value("developed", false);
    int s = params.value("s", -1);
    if (pr) {
        if (pr->points != d.universe.size()) bad("presentation point count differs from the point set");
        check_presented_groups(*pr, d.universe);
        d.developed = true;
        if (root.contains("layers"))
            for (const json& l : root.at("layers")) d.layers.push_back(present_blocks(*pr, l, d.universe));
        d.terminal = present_blocks(*pr, field(root, "terminal"), d.universe);
        d = base_form(d);
    } else {
        if (root.contains("layers"))
            for (const json& l : root.at("layers")) d.layers.push_back(read_blocks(l, d.universe));
        d.terminal = read_blocks(field(root, "terminal"), d.universe);
    }
    if (s >= 0 && s != d.s()) raise(ErrorKind::shape, "declared s differs from the number of layers");
    return d;
}

Design read_hdesign(const json& root) {
    const json& params = field(root, "parameters");
    std::unique_ptr<Presentation> pr;
    if (root.contains("presentation")) pr = std::make_unique<Presentation>(read_presentation(root.at("presentation")));
    HDesign h;
    h.universe = read_universe(params, root);
    h.t = params.value("t", 3);
    h.developed = root.value("developed", false);
    if (pr) {
        check_presented_groups(*pr, h.universe);
        h.developed = true;
        h.blocks = present_blocks(*pr, field(root, "blocks"), h.universe);
        h = base_form(h);
    } else {
        h.blocks = read_blocks(field(root, "blocks"), h.universe);
    }
    return h;
}

Design read_rosqs(const json& root) {
    RoSQS r;
    r.n = int_field(field(root, "parameters"), "n");
    for (const json& b : field(root, "base_blocks")) r.base_blocks.push_back(int_list(b));
    return r;
}

}  // namespace

const char* kind_of(const Design& d) {
    static const char* names[] = {"packing", "code", "fan", "hdesign", "rosqs"};
    return names[d.index()];
}

std::size_t block_count(const Design& d) {
    return std::visit(
        [](const auto& x) -> std::size_t {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, CyclicPacking>) return x.base_blocks.size();
            if constexpr (std::is_same_v<T, Code>) return x.codewords.size();
            if constexpr (std::is_same_v<T, FanDesign>) return x.base_count();
            if constexpr (std::is_same_v<T, HDesign>) return x.blocks.size();
            if constexpr (std::is_same_v<T, RoSQS>) return x.base_blocks.size();
        },
        d);
}

Design parse_design(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        bad(std::string("invalid JSON: ") + e.what());
    }
    try {
        if (!root.is_object()) bad("design file must be a JSON object");
        if (int_field(root, "schema_version") != kSchemaVersion)
            bad("unsupported schema_version (expected " + std::to_string(kSchemaVersion) + ")");
        const json& k = field(root, "kind");
        if (!k.is_string()) bad("kind must be a string");
        std::string kind = k.get<std::string>();
        if (kind == "packing") return read_packing(root);
        if (kind == "code") return read_code(root);
        if (kind == "fan") return read_fan(root);
        if (kind == "hdesign") return read_hdesign(root);
        if (kind == "rosqs") return read_rosqs(root);
        bad("unknown kind '" + kind + "'");
    } catch (const json::exception& e) {
        bad(std::string("malformed design: ") + e.what());
    }
}

namespace {

// Short containers stay on one line so that each block gets its own line.
void pretty(const json& j, int indent, int depth, std::string& out) {
    std::string flat = j.dump();
    bool block_list = depth == 1 && j.is_array() && !j.empty() && j.front().is_structured();
    if (!j.is_structured() || j.empty() || (depth > 0 && !block_list && flat.size() + depth * indent <= 100)) {
        out += flat;
        return;
    }
    const std::string pad(static_cast<std::size_t>((depth + 1) * indent), ' ');
    out += j.is_object() ? "{\n" : "[\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        if (j.is_object()) out += json(it.key()).dump() + ": ";
        pretty(*it, indent, depth + 1, out);
    }
    out += "\n" + std::string(static_cast<std::size_t>(depth * indent), ' ') + (j.is_object() ? "}" : "]");
}

}  // namespace

std::string serialize_design(const Design& d, int indent) {
    json root;
    root["schema_version"] = kSchemaVersion;
    root["kind"] = kind_of(d);
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, CyclicPacking>) {
                root["parameters"] = {{"u", x.u}, {"v", x.v}, {"k", x.k}, {"t", x.t}};
                json blocks = json::array();
                for (const BaseBlock& b : x.base_blocks) {
                    json jb = json::array();
                    for (const Point& p : b.points) jb.push_back({p.row, p.col});
                    blocks.push_back(jb);
                }
                root["base_blocks"] = blocks;
            } else if constexpr (std::is_same_v<T, Code>) {
                root["parameters"] = {{"u", x.u}, {"v", x.v}, {"k", x.k}, {"lambda", x.lambda}};
                json cws = json::array();
                for (const CodewordMatrix& m : x.codewords) {
                    json rows = json::array();
                    for (int i = 0; i < m.rows(); ++i) {
                        std::string row;
                        for (int j = 0; j < m.cols(); ++j) row += m.at(i, j) ? '1' : '0';
                        rows.push_back(row);
                    }
                    cws.push_back(rows);
                }
                root["codewords"] = cws;
            } else if constexpr (std::is_same_v<T, FanDesign>) {
                json p = write_universe(x.universe, root);
                p["s"] = x.s();
                root["parameters"] = p;
                if (x.developed) root["developed"] = true;
                json layers = json::array();
                for (const auto& l : x.layers) layers.push_back(write_blocks(l, x.universe));
                root["layers"] = layers;
                root["terminal"] = write_blocks(x.terminal, x.universe);
            } else if constexpr (std::is_same_v<T, HDesign>) {
                json p = write_universe(x.universe, root);
                p["t"] = x.t;
                root["parameters"] = p;
                if (x.developed) root["developed"] = true;
                root["blocks"] = write_blocks(x.blocks, x.universe);
            } else {
                root["parameters"] = {{"n", x.n}};
                root["base_blocks"] = x.base_blocks;
            }
        },
        d);
    if (indent < 0) return root.dump();
    std::string out;
    pretty(root, indent, 0, out);
    return out;
}

Design load_design(const std::string& source) {
    const std::string scheme = "catalog:";
    if (source.rfind(scheme, 0) == 0) return catalog_get(source.substr(scheme.size())).design;
    std::ifstream in(source);
    if (!in) raise(ErrorKind::not_found, "cannot open " + source);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_design(ss.str());
}

void save_design(const Design& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) raise(ErrorKind::parameter, "cannot write " + path);
    out << serialize_design(d, 2) << "\n";
}

}  // namespace ooc
