#include "ooc/constructs.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ooc/packing.hpp"

namespace ooc {
namespace {

std::string summary(const CyclicPacking& p) {
    return "packing " + std::to_string(p.u) + "x" + std::to_string(p.v) + ", " + std::to_string(p.base_blocks.size()) +
           " base blocks";
}

std::string summary(const FanDesign& d) {
    return std::to_string(d.s()) + "-FG on " + d.universe.describe() + ", " + std::to_string(d.base_count()) +
           " base blocks";
}

std::string summary(const HDesign& d) {
    return "H design (t=" + std::to_string(d.t) + ") on " + d.universe.describe() + ", " + std::to_string(d.blocks.size()) +
           " base blocks";
}

std::string summary(const RoSQS& r) {
    return "RoSQS(" + std::to_string(r.n) + "), " + std::to_string(r.base_blocks.size()) + " base blocks";
}

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

void require_packing(const CyclicPacking& p, const std::string& role) {
    auto r = verify_packing(p);
    if (!r.valid || !r.strictly_cyclic)
        raise(ErrorKind::precondition, role + " is not a valid strictly cyclic packing");
}

void require_fan(const FanDesign& d, const std::string& role, bool strict = true) {
    auto r = verify_fan(d);
    if (!r.ok) raise(ErrorKind::precondition, role + " does not verify: " + r.failure);
    ActionReport a;
    if (d.universe.shape() == Shape::cyclic) a = verify_h_cyclic(d, strict);
    else if (d.universe.shape() == Shape::regular) a = verify_regular(d, strict);
    else a.ok = true;
    if (!a.ok) raise(ErrorKind::precondition, role + " lacks the required cyclic action: " + a.failure);
}

void require_h(const HDesign& d, const std::string& role) {
    auto r = verify_h_design(d);
    if (!r.ok) raise(ErrorKind::precondition, role + " does not verify: " + r.failure);
    if (d.universe.shape() == Shape::cyclic && !verify_h_cyclic(d, true).ok)
        raise(ErrorKind::precondition, role + " is not strictly cyclic");
}

// Outputs are re-verified; a failure means the inputs did not meet the
// construction's hypotheses.
void check_output(const CyclicPacking& p, const std::string& recipe) {
    auto r = verify_packing(p);
    if (!r.valid || !r.strictly_cyclic)
        raise(ErrorKind::precondition, recipe + ": output is not a valid strictly cyclic packing");
}

void check_output(const FanDesign& d, const std::string& recipe) {
    auto r = verify_fan(d);
    if (!r.ok) raise(ErrorKind::precondition, recipe + ": output does not verify: " + r.failure);
    ActionReport a;
    if (d.universe.shape() == Shape::cyclic) a = verify_h_cyclic(d, true);
    else if (d.universe.shape() == Shape::regular) a = verify_regular(d, true);
    else a.ok = true;
    if (!a.ok) raise(ErrorKind::precondition, recipe + ": output is not strictly cyclic: " + a.failure);
}

void check_output(const HDesign& d, const std::string& recipe) {
    auto r = verify_h_design(d);
    if (!r.ok) raise(ErrorKind::precondition, recipe + ": output does not verify: " + r.failure);
}

int uniform_rows(const Universe& u, const std::string& role) {
    if (u.shape() != Shape::cyclic) raise(ErrorKind::shape, role + " must live on a cyclic point set");
    const auto& rows = u.group_rows();
    if (rows.empty()) raise(ErrorKind::shape, role + " has no groups");
    for (int g : rows)
        if (g != rows[0]) raise(ErrorKind::shape, role + " must have groups of one size");
    return rows[0];
}

std::vector<Block> canonical_all(std::vector<Block> blocks, const Universe& u) {
    for (Block& b : blocks) b = canonicalize(b, u);
    std::sort(blocks.begin(), blocks.end());
    return blocks;
}

BaseBlock to_base_block(const Block& b, const Universe& u) {
    BaseBlock out;
    for (int p : b) {
        auto c = u.coords(p);
        out.points.push_back({c[0], c[1]});
    }
    std::sort(out.points.begin(), out.points.end());
    return out;
}

// Ingredient designs keyed by their number of groups.
template <class D>
std::map<int, const D*> by_groups(const std::vector<D>& designs, int& rows, int& order, const std::string& role) {
    std::map<int, const D*> out;
    for (const D& d : designs) {
        int g = uniform_rows(d.universe, role);
        if (rows == 0) rows = g, order = d.universe.h();
        if (g != rows || d.universe.h() != order) raise(ErrorKind::parameter, role + "s disagree on group shape");
        int k = d.universe.group_count();
        if (out.count(k)) raise(ErrorKind::parameter, "two " + role + "s with " + std::to_string(k) + " groups");
        out[k] = &d;
    }
    return out;
}

template <class D>
const D& pick(const std::map<int, const D*>& m, int k, const std::string& role) {
    auto it = m.find(k);
    if (it == m.end()) raise(ErrorKind::parameter, "no " + role + " with " + std::to_string(k) + " groups");
    return *it->second;
}

// Lays ingredient block `ib` over the master block `mb`: ingredient group i
// is the i-th point of mb, and (master point, ingredient coordinates) go
// through `tau` into the output universe.
template <class Tau>
Block weigh(const Block& mb, const Block& ib, const Universe& master, const Universe& ing, const Universe& out, Tau tau) {
    Block r;
    for (int p : ib) {
        auto c = ing.coords(p);  // (i, z, w)
        r.push_back(out.id(tau(master.coords(mb[c[0]]), c[1], c[2])));
    }
    return normalize(std::move(r), out);
}

}  // namespace

// ------------------------------------------------------------ RoSQS to SQS(2 x p)

HartmanParts hartman_parts(const RoSQS& r) {
    const int p = r.n - 1;
    if (!is_prime(p) || p % 6 != 1) raise(ErrorKind::parameter, "need an RoSQS(p+1) with p = 1 (mod 6) prime");
    auto rep = verify_rosqs(r);
    if (!rep.ok) raise(ErrorKind::precondition, "input RoSQS does not verify: " + rep.failure);

    auto row0 = [&](int x) { return Point{0, mod(x, p)}; };
    auto row1 = [&](long long x) { return Point{1, mod(x, p)}; };
    auto block = [&](std::vector<Point> pts) { return make_block(std::move(pts), 2, p); };
    auto tau = [&](const BaseBlock& b) {
        std::vector<Point> pts;
        for (const Point& q : b.points) pts.push_back({1 - q.row, mod(-static_cast<long long>(q.col), p)});
        return block(pts);
    };

    HartmanParts parts;
    for (const auto& b : r.base_blocks) {
        std::vector<int> finite;
        for (int x : b)
            if (x != -1) finite.push_back(x);
        std::sort(finite.begin(), finite.end());
        if (finite.size() == 4) {
            parts.a1.push_back(block({row0(finite[0]), row0(finite[1]), row0(finite[2]), row0(finite[3])}));
            continue;
        }
        parts.a2.push_back(block({row1(0), row0(finite[0]), row0(finite[1]), row0(finite[2])}));
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                long long d = finite[j] - finite[i];
                for (long long s = 1; s <= (p - 1) / 2; ++s)
                    parts.a3.push_back(block({row0(finite[i]), row0(finite[j]), row1((2 * s - 1) * d), row1(2 * s * d)}));
            }
    }
    for (const BaseBlock& b : parts.a1) parts.a1_image.push_back(tau(b));
    for (const BaseBlock& b : parts.a2) parts.a2_image.push_back(tau(b));
    return parts;
}

Built<CyclicPacking> hartman(const RoSQS& r) {
    HartmanParts parts = hartman_parts(r);
    const int p = r.n - 1;
    Built<CyclicPacking> out{{2, p, 4, 3, {}}, {"hartman", {summary(r)}, {}, "", 0}};
    auto add = [&](const std::vector<BaseBlock>& fam, const char* name) {
        for (const BaseBlock& b : fam) out.design.base_blocks.push_back(canonicalize(b, p));
        out.trace.steps.push_back({name, static_cast<long long>(fam.size())});
    };
    add(parts.a1, "A1 (blocks without infinity, row 0)");
    add(parts.a1_image, "A1 image under x_i -> (-x)_{1-i}");
    add(parts.a2, "A2 (blocks with infinity)");
    add(parts.a2_image, "A2 image under x_i -> (-x)_{1-i}");
    add(parts.a3, "A3 (pair blocks)");
    std::sort(out.design.base_blocks.begin(), out.design.base_blocks.end());
    out.trace.total = static_cast<long long>(out.design.base_blocks.size());
    check_output(out.design, out.trace.recipe);
    out.trace.output = summary(out.design);
    return out;
}

// ------------------------------------------------------------ filling

Built<CyclicPacking> filling_1(const FanDesign& master_in, const std::vector<CyclicPacking>& fillers) {
    const Universe& u = master_in.universe;
    if (u.shape() != Shape::cyclic) raise(ErrorKind::shape, "filling_1 needs a master on a cyclic point set");
    if (master_in.s() != 0) raise(ErrorKind::shape, "filling_1 needs a 0-FG master");
    require_fan(master_in, "master");
    FanDesign master = base_form(master_in);
    const int h = u.h();

    std::map<int, const CyclicPacking*> by_rows;
    int k = 0;
    for (const CyclicPacking& f : fillers) {
        if (f.v != h) raise(ErrorKind::parameter, "filler column count differs from the master's cyclic order");
        require_packing(f, "filler");
        if (f.t != 3) raise(ErrorKind::parameter, "fillers must be 3-packings");
        if (k && f.k != k) raise(ErrorKind::parameter, "fillers disagree on block size");
        k = f.k;
        by_rows[f.u] = &f;
    }
    for (const Block& b : master.terminal)
        if (k && static_cast<int>(b.size()) != k) raise(ErrorKind::shape, "master block size differs from fillers");
    if (!k) k = master.terminal.empty() ? 4 : static_cast<int>(master.terminal[0].size());

    std::vector<int> row_offset;
    int rows = 0;
    for (int g : u.group_rows()) row_offset.push_back(rows), rows += g;

    Built<CyclicPacking> out{{rows, h, k, 3, {}}, {"filling1", {summary(master)}, {}, "", 0}};
    for (const Block& b : master.terminal) {
        if (static_cast<int>(b.size()) != k) raise(ErrorKind::shape, "master blocks must all have size " + std::to_string(k));
        std::vector<Point> pts;
        for (int id : b) {
            auto c = u.coords(id);
            pts.push_back({row_offset[c[0]] + c[1], c[2]});
        }
        out.design.base_blocks.push_back(canonicalize(make_block(pts, rows, h), h));
    }
    out.trace.steps.push_back({"master base blocks", static_cast<long long>(master.terminal.size())});
    for (int x = 0; x < u.group_count(); ++x) {
        int g = u.group_rows()[x];
        auto it = by_rows.find(g);
        if (it == by_rows.end()) raise(ErrorKind::parameter, "no filler for groups with " + std::to_string(g) + " rows");
        for (const BaseBlock& b : it->second->base_blocks) {
            std::vector<Point> pts;
            for (const Point& q : b.points) pts.push_back({row_offset[x] + q.row, q.col});
            out.design.base_blocks.push_back(canonicalize(make_block(pts, rows, h), h));
        }
        out.trace.steps.push_back({"filler on group " + std::to_string(x), static_cast<long long>(it->second->base_blocks.size())});
    }
    for (const CyclicPacking& f : fillers) out.trace.inputs.push_back(summary(f));
    std::sort(out.design.base_blocks.begin(), out.design.base_blocks.end());
    out.trace.total = static_cast<long long>(out.design.base_blocks.size());
    check_output(out.design, out.trace.recipe);
    out.trace.output = summary(out.design);
    return out;
}

Built<CyclicPacking> filling_2(const FanDesign& master_in, const CyclicPacking& filler) {
    const Universe& u = master_in.universe;
    if (u.shape() != Shape::regular) raise(ErrorKind::shape, "filling_2 needs a master on a regular point set");
    if (master_in.s() != 0) raise(ErrorKind::shape, "filling_2 needs a 0-FG master");
    require_fan(master_in, "master");
    FanDesign master = base_form(master_in);
    if (filler.u != u.u() || filler.v != u.h())
        raise(ErrorKind::parameter, "filler must be a " + std::to_string(u.u()) + "x" + std::to_string(u.h()) + " packing");
    require_packing(filler, "filler");
    const int k = filler.k, v = u.v(), dil = u.v() / u.h();

    Built<CyclicPacking> out{{u.u(), v, k, 3, {}}, {"filling2", {summary(master), summary(filler)}, {}, "", 0}};
    for (const Block& b : master.terminal) {
        if (static_cast<int>(b.size()) != k) raise(ErrorKind::shape, "master block size differs from the filler's");
        out.design.base_blocks.push_back(canonicalize(to_base_block(b, u), v));
    }
    out.trace.steps.push_back({"master base blocks", static_cast<long long>(master.terminal.size())});
    for (const BaseBlock& b : filler.base_blocks) {
        std::vector<Point> pts;
        for (const Point& q : b.points) pts.push_back({q.row, q.col * dil});
        out.design.base_blocks.push_back(canonicalize(make_block(pts, u.u(), v), v));
    }
    out.trace.steps.push_back({"filler dilated by " + std::to_string(dil), static_cast<long long>(filler.base_blocks.size())});
    std::sort(out.design.base_blocks.begin(), out.design.base_blocks.end());
    out.trace.total = static_cast<long long>(out.design.base_blocks.size());
    check_output(out.design, out.trace.recipe);
    out.trace.output = summary(out.design);
    return out;
}

// ------------------------------------------------------------ weighting

namespace {

template <class Tau>
Built<FanDesign> weigh_fan(const FanDesign& master_in, const std::vector<FanDesign>& fans_in,
                           const std::vector<HDesign>& hs_in, const Universe& out_u, int g2, int h2, const char* recipe,
                           Tau tau) {
    FanDesign master = base_form(master_in);
    std::vector<FanDesign> fans;
    for (const FanDesign& f : fans_in) fans.push_back(base_form(f));
    std::vector<HDesign> hs;
    for (const HDesign& h : hs_in) hs.push_back(base_form(h));
    int rows = g2, order = h2;
    auto fan_of = by_groups(fans, rows, order, "layer ingredient");
    auto h_of = by_groups(hs, rows, order, "terminal ingredient");

    int s = -1;
    for (const FanDesign& f : fans) {
        if (s >= 0 && f.s() != s) raise(ErrorKind::parameter, "layer ingredients disagree on s");
        s = f.s();
    }
    if (s < 0) s = 0;

    Built<FanDesign> out{{out_u, std::vector<std::vector<Block>>(s), {}, false}, {recipe, {summary(master)}, {}, "", 0}};
    for (const FanDesign& f : fans) out.trace.inputs.push_back(summary(f));
    for (const HDesign& h : hs) out.trace.inputs.push_back(summary(h));

    long long layer_count = 0;
    for (const Block& mb : master.layers[0]) {
        const FanDesign& f = pick(fan_of, static_cast<int>(mb.size()), "layer ingredient");
        for (int j = 0; j < s; ++j)
            for (const Block& ib : f.layers[j])
                out.design.layers[j].push_back(weigh(mb, ib, master.universe, f.universe, out_u, tau));
        for (const Block& ib : f.terminal) out.design.terminal.push_back(weigh(mb, ib, master.universe, f.universe, out_u, tau));
        layer_count += static_cast<long long>(f.base_count());
    }
    out.trace.steps.push_back({"layer blocks weighted", layer_count});
    long long term_count = 0;
    for (const Block& mb : master.terminal) {
        const HDesign& h = pick(h_of, static_cast<int>(mb.size()), "terminal ingredient");
        for (const Block& ib : h.blocks) out.design.terminal.push_back(weigh(mb, ib, master.universe, h.universe, out_u, tau));
        term_count += static_cast<long long>(h.blocks.size());
    }
    out.trace.steps.push_back({"terminal blocks weighted", term_count});
    for (auto& l : out.design.layers) l = canonical_all(std::move(l), out_u);
    out.design.terminal = canonical_all(std::move(out.design.terminal), out_u);
    out.trace.total = static_cast<long long>(out.design.base_count());
    check_output(out.design, out.trace.recipe);
    out.trace.output = summary(out.design);
    return out;
}

void check_ingredients(const std::vector<FanDesign>& fans, const std::vector<HDesign>& hs) {
    for (const FanDesign& f : fans) {
        if (f.universe.shape() != Shape::cyclic) raise(ErrorKind::shape, "layer ingredients must live on cyclic point sets");
        require_fan(f, "layer ingredient");
    }
    for (const HDesign& h : hs) {
        if (h.universe.shape() != Shape::cyclic) raise(ErrorKind::shape, "terminal ingredients must live on cyclic point sets");
        if (h.t != 3) raise(ErrorKind::parameter, "terminal ingredients must be H designs with t = 3");
        require_h(h, "terminal ingredient");
    }
}

std::pair<int, int> ingredient_shape(const std::vector<FanDesign>& fans, const std::vector<HDesign>& hs) {
    if (!fans.empty()) return {uniform_rows(fans[0].universe, "layer ingredient"), fans[0].universe.h()};
    if (!hs.empty()) return {uniform_rows(hs[0].universe, "terminal ingredient"), hs[0].universe.h()};
    raise(ErrorKind::parameter, "weighting needs at least one ingredient");
}

}  // namespace

Built<FanDesign> weighting_1(const FanDesign& master, const std::vector<FanDesign>& fans, const std::vector<HDesign>& hs) {
    const Universe& mu = master.universe;
    int g1 = uniform_rows(mu, "master");
    if (master.s() != 1) raise(ErrorKind::shape, "weighting_1 needs a 1-FG master");
    require_fan(master, "master");
    check_ingredients(fans, hs);
    auto [g2, h2] = ingredient_shape(fans, hs);
    const int h1 = mu.h();
    Universe out_u = Universe::cyclic(std::vector<int>(mu.group_count(), g1 * g2), h1 * h2);
    auto tau = [&](const std::vector<int>& m, int z, int w) { return std::vector<int>{m[0], m[1] + z * g1, m[2] + w * h1}; };
    return weigh_fan(master, fans, hs, out_u, g2, h2, "weighting1", tau);
}

Built<FanDesign> weighting_2(const FanDesign& master, const std::vector<FanDesign>& fans, const std::vector<HDesign>& hs) {
    const Universe& mu = master.universe;
    if (mu.shape() != Shape::regular) raise(ErrorKind::shape, "weighting_2 needs a master on a regular point set");
    if (master.s() != 1) raise(ErrorKind::shape, "weighting_2 needs a 1-FG master");
    require_fan(master, "master");
    check_ingredients(fans, hs);
    auto [g2, h2] = ingredient_shape(fans, hs);
    const int g1 = mu.u(), h1 = mu.h(), n = mu.v() / mu.h();
    Universe out_u = Universe::regular(g1 * g2, h1 * h2 * n, h1 * h2);
    auto tau = [&](const std::vector<int>& m, int z, int w) { return std::vector<int>{m[0] + z * g1, m[1] + w * h1 * n}; };
    return weigh_fan(master, fans, hs, out_u, g2, h2, "weighting2", tau);
}

Built<HDesign> weighting_3(const HDesign& master_in, const std::vector<HDesign>& ingredients_in) {
    const Universe& mu = master_in.universe;
    int g1 = uniform_rows(mu, "master");
    require_h(master_in, "master");
    for (const HDesign& h : ingredients_in) {
        if (h.universe.shape() != Shape::cyclic) raise(ErrorKind::shape, "ingredients must live on cyclic point sets");
        if (h.t != master_in.t) raise(ErrorKind::parameter, "ingredients must share the master's t");
        require_h(h, "ingredient");
    }
    if (ingredients_in.empty()) raise(ErrorKind::parameter, "weighting needs at least one ingredient");
    HDesign master = base_form(master_in);
    std::vector<HDesign> ings;
    for (const HDesign& h : ingredients_in) ings.push_back(base_form(h));
    int g2 = 0, h2 = 0;
    auto of = by_groups(ings, g2, h2, "ingredient");
    const int h1 = mu.h();
    Universe out_u = Universe::cyclic(std::vector<int>(mu.group_count(), g1 * g2), h1 * h2);
    auto tau = [&](const std::vector<int>& m, int z, int w) { return std::vector<int>{m[0], m[1] + z * g1, m[2] + w * h1}; };

    Built<HDesign> out{{out_u, master.t, {}, false}, {"weighting3", {summary(master)}, {}, "", 0}};
    for (const HDesign& h : ings) out.trace.inputs.push_back(summary(h));
    for (const Block& mb : master.blocks) {
        const HDesign& h = pick(of, static_cast<int>(mb.size()), "ingredient");
        for (const Block& ib : h.blocks) out.design.blocks.push_back(weigh(mb, ib, mu, h.universe, out_u, tau));
    }
    out.design.blocks = canonical_all(std::move(out.design.blocks), out_u);
    out.trace.steps.push_back({"master blocks weighted", static_cast<long long>(out.design.blocks.size())});
    out.trace.total = static_cast<long long>(out.design.blocks.size());
    check_output(out.design, out.trace.recipe);
    out.trace.output = summary(out.design);
    return out;
}

// ------------------------------------------------------------ remaps

Built<CyclicPacking> fold(const CyclicPacking& p, int v1) {
    if (v1 < 1 || p.v % v1 != 0) raise(ErrorKind::parameter, "v1 must divide v");
    require_packing(p, "input");
    const int v2 = p.v / v1, u2 = p.u * v1;
    Built<CyclicPacking> out{{u2, v2, p.k, p.t, {}}, {"fold", {summary(p)}, {}, "", 0}};
    // Z_v restricted to the subgroup generated by v1; column c sits in coset c mod v1.
    for (const BaseBlock& b : p.base_blocks)
        for (int d = 0; d < v1; ++d) {
            std::vector<Point> pts;
            for (const Point& q : shift(b, d, p.v).points) pts.push_back({q.row * v1 + q.col % v1, q.col / v1});
            out.design.base_blocks.push_back(canonicalize(make_block(pts, u2, v2), v2));
        }
    std::sort(out.design.base_blocks.begin(), out.design.base_blocks.end());
    out.trace.steps.push_back({"translates per base block: " + std::to_string(v1), static_cast<long long>(out.design.base_blocks.size())});
    out.trace.total = static_cast<long long>(out.design.base_blocks.size());
    check_output(out.design, out.trace.recipe);
    out.trace.output = summary(out.design);
    return out;
}

Built<FanDesign> semicyclic_to_vcyclic(const FanDesign& d) {
    const Universe& u = d.universe;
    if (u.shape() != Shape::cyclic || u.group_rows() != std::vector<int>{1, 1} || u.h() % 2 != 0)
        raise(ErrorKind::shape, "need a semi-cyclic design of type (2v)^2 on I_2 x I_1 x Z_2v");
    if (d.s() != 0) raise(ErrorKind::shape, "need a 0-FG");
    require_fan(d, "input", false);
    const int v = u.h() / 2;
    if (v % 2 == 0) raise(ErrorKind::parameter, "v must be odd");
    Universe target = Universe::cyclic({2, 2}, v);
    auto map = [&](int id) {
        auto c = u.coords(id);
        return target.id({c[0], c[2] % 2, c[2] / 2});
    };
    Built<FanDesign> out{relabel(d, target, map), {"semicyclic-to-vcyclic", {summary(d)}, {}, "", 0}};
    out.trace.total = static_cast<long long>(out.design.base_count());
    out.trace.steps.push_back({"orbits under Z_" + std::to_string(v), out.trace.total});
    check_output(out.design, out.trace.recipe);
    out.trace.output = summary(out.design);
    return out;
}

Built<FanDesign> regular_to_h1cyclic(const FanDesign& d, int h1) {
    const Universe& u = d.universe;
    if (u.shape() != Shape::regular) raise(ErrorKind::shape, "need a design on a regular point set");
    if (h1 < 1 || u.h() % h1 != 0) raise(ErrorKind::parameter, "h1 must divide h");
    require_fan(d, "input");
    const int n = u.v() / u.h(), q = u.h() / h1;
    Universe target = Universe::cyclic(std::vector<int>(n, u.u() * q), h1);
    auto map = [&](int id) {
        auto c = u.coords(id);
        int i = c[1] % n, m = c[1] / n;
        return target.id({i, c[0] * q + m % q, m / q});
    };
    Built<FanDesign> out{relabel(d, target, map), {"regular-to-h1cyclic", {summary(d)}, {}, "", 0}};
    out.trace.total = static_cast<long long>(out.design.base_count());
    out.trace.steps.push_back({"orbits under Z_" + std::to_string(h1), out.trace.total});
    check_output(out.design, out.trace.recipe);
    out.trace.output = summary(out.design);
    return out;
}

namespace {

std::pair<Universe, std::function<int(int)>> restrict_map(const Universe& u, int h1) {
    if (u.shape() != Shape::cyclic) raise(ErrorKind::shape, "need a design on a cyclic point set");
    if (h1 < 1 || u.h() % h1 != 0) raise(ErrorKind::parameter, "h1 must divide h");
    const int q = u.h() / h1;
    std::vector<int> rows;
    for (int g : u.group_rows()) rows.push_back(g * q);
    Universe target = Universe::cyclic(rows, h1);
    auto map = [u, target, q](int id) {
        auto c = u.coords(id);
        return target.id({c[0], c[1] * q + c[2] % q, c[2] / q});
    };
    return {target, map};
}

}  // namespace

Built<FanDesign> restrict_action(const FanDesign& d, int h1) {
    auto [target, map] = restrict_map(d.universe, h1);
    require_fan(d, "input");
    Built<FanDesign> out{relabel(d, target, map), {"restrict", {summary(d)}, {}, "", 0}};
    out.trace.total = static_cast<long long>(out.design.base_count());
    out.trace.steps.push_back({"orbits under Z_" + std::to_string(h1), out.trace.total});
    check_output(out.design, out.trace.recipe);
    out.trace.output = summary(out.design);
    return out;
}

Built<HDesign> restrict_action(const HDesign& d, int h1) {
    auto [target, map] = restrict_map(d.universe, h1);
    require_h(d, "input");
    Built<HDesign> out{relabel(d, target, map), {"restrict", {summary(d)}, {}, "", 0}};
    out.trace.total = static_cast<long long>(out.design.blocks.size());
    out.trace.steps.push_back({"orbits under Z_" + std::to_string(h1), out.trace.total});
    check_output(out.design, out.trace.recipe);
    out.trace.output = summary(out.design);
    return out;
}

Built<FanDesign> perfect_to_regular_1fg(const CyclicPacking& p) {
    if (p.u != 2 || p.k != 4 || p.t != 3) raise(ErrorKind::parameter, "need a 3-(2 x v, 4, 1) packing");
    if (mod(p.v, 6) != 1 && mod(p.v, 6) != 5) raise(ErrorKind::parameter, "v must be 1 or 5 mod 6");
    if (!is_perfect(p)) raise(ErrorKind::precondition, "input packing is not perfect");
    const int v = p.v;
    Universe u = Universe::regular(2, v, 1);
    FanDesign d{u, {{}}, {}, false};
    std::set<Block> pairs;
    for (int a = 0; a < u.size(); ++a)
        for (int b = a + 1; b < u.size(); ++b)
            if (u.group_of(a) != u.group_of(b)) pairs.insert(canonicalize(Block{a, b}, u));
    d.layers[0].assign(pairs.begin(), pairs.end());
    for (const BaseBlock& b : p.base_blocks) {
        Block blk;
        for (const Point& q : b.points) blk.push_back(u.id({q.row, q.col}));
        d.terminal.push_back(canonicalize(normalize(blk, u), u));
    }
    std::sort(d.terminal.begin(), d.terminal.end());
    Built<FanDesign> out{d, {"perfect-to-regular-1fg", {summary(p)}, {}, "", 0}};
    out.trace.steps.push_back({"cross-group pairs", static_cast<long long>(d.layers[0].size())});
    out.trace.steps.push_back({"packing blocks", static_cast<long long>(d.terminal.size())});
    out.trace.total = static_cast<long long>(d.base_count());
    check_output(d, out.trace.recipe);
    out.trace.output = summary(d);
    return out;
}

Built<FanDesign> rosqs_to_1fg(const RoSQS& r) {
    auto rep = verify_rosqs(r);
    if (!rep.ok) raise(ErrorKind::precondition, "input RoSQS does not verify: " + rep.failure);
    const int v = r.n - 1;
    Universe u = Universe::regular(1, v, 1);
    FanDesign d{u, {{}}, {}, false};
    for (const auto& b : r.base_blocks) {
        Block blk;
        for (int x : b)
            if (x != -1) blk.push_back(x);
        blk = canonicalize(normalize(blk, u), u);
        (blk.size() == 3 ? d.layers[0] : d.terminal).push_back(blk);
    }
    std::sort(d.layers[0].begin(), d.layers[0].end());
    std::sort(d.terminal.begin(), d.terminal.end());
    Built<FanDesign> out{d, {"rosqs-to-1fg", {summary(r)}, {}, "", 0}};
    out.trace.steps.push_back({"derived triples", static_cast<long long>(d.layers[0].size())});
    out.trace.steps.push_back({"blocks avoiding infinity", static_cast<long long>(d.terminal.size())});
    out.trace.total = static_cast<long long>(d.base_count());
    check_output(d, out.trace.recipe);
    out.trace.output = summary(d);
    return out;
}

namespace {

std::pair<Universe, std::function<int(int)>> plain_map(const Universe& u) {
    if (u.shape() != Shape::plain) raise(ErrorKind::shape, "need a design on a plain point set");
    if (u.group_count() == 0) raise(ErrorKind::shape, "design has no groups");
    const int g = static_cast<int>(u.groups()[0].size());
    for (const auto& grp : u.groups())
        if (static_cast<int>(grp.size()) != g) raise(ErrorKind::shape, "groups must have equal size");
    Universe target = Universe::cyclic(std::vector<int>(u.group_count(), g), 1);
    std::vector<int> to(u.size());
    for (int x = 0; x < u.group_count(); ++x)
        for (int y = 0; y < g; ++y) to[u.groups()[x][y]] = target.id({x, y, 0});
    return {target, [to](int p) { return to[p]; }};
}

}  // namespace

FanDesign as_cyclic(const FanDesign& d) {
    auto [target, map] = plain_map(d.universe);
    return relabel(d, target, map);
}

HDesign as_cyclic(const HDesign& d) {
    auto [target, map] = plain_map(d.universe);
    return relabel(d, target, map);
}

Built<FanDesign> add_pair_layer(const FanDesign& d_in) {
    if (d_in.s() != 0) raise(ErrorKind::shape, "need a 0-FG");
    require_fan(d_in, "input");
    FanDesign d = base_form(d_in);
    const Universe& u = d.universe;
    std::set<Block> pairs;
    for (int a = 0; a < u.size(); ++a)
        for (int b = a + 1; b < u.size(); ++b)
            if (u.group_of(a) != u.group_of(b)) pairs.insert(canonicalize(Block{a, b}, u));
    d.layers.assign(1, std::vector<Block>(pairs.begin(), pairs.end()));
    Built<FanDesign> out{d, {"add-pair-layer", {summary(d_in)}, {}, "", 0}};
    out.trace.steps.push_back({"cross-group pairs", static_cast<long long>(d.layers[0].size())});
    out.trace.steps.push_back({"terminal blocks", static_cast<long long>(d.terminal.size())});
    out.trace.total = static_cast<long long>(d.base_count());
    check_output(d, out.trace.recipe);
    out.trace.output = summary(d);
    return out;
}

HDesign semicyclic_h4(int h) {
    if (h < 1) raise(ErrorKind::parameter, "h must be positive");
    Universe u = Universe::cyclic({1, 1, 1, 1}, h);
    HDesign d{u, 3, {}, false};
    for (int b = 0; b < h; ++b)
        for (int c = 0; c < h; ++c)
            d.blocks.push_back(normalize({u.id({0, 0, 0}), u.id({1, 0, b}), u.id({2, 0, c}), u.id({3, 0, mod(c - b, h)})}, u));
    d.blocks = canonical_all(std::move(d.blocks), u);
    return d;
}

}  // namespace ooc
