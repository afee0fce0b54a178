#include "ooc/designs.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "subsets.hpp"

namespace ooc {

// ---------------------------------------------------------------- Universe

Universe Universe::plain(int points, std::vector<std::vector<int>> groups) {
    if (points < 0) raise(ErrorKind::parameter, "negative point count");
    Universe u;
    u.shape_ = Shape::plain;
    u.size_ = points;
    for (auto& g : groups) {
        std::sort(g.begin(), g.end());
        for (int p : g)
            if (p < 0 || p >= points) raise(ErrorKind::coordinate, "group point " + std::to_string(p) + " out of range");
    }
    u.groups_ = std::move(groups);
    u.index_groups();
    return u;
}

Universe Universe::cyclic(std::vector<int> group_rows, int h) {
    if (h < 1) raise(ErrorKind::parameter, "cyclic order must be positive");
    Universe u;
    u.shape_ = Shape::cyclic;
    u.h_ = h;
    u.rows_ = std::move(group_rows);
    int offset = 0;
    for (int g : u.rows_) {
        if (g < 1) raise(ErrorKind::parameter, "group rows must be positive");
        u.offsets_.push_back(offset);
        std::vector<int> grp(static_cast<std::size_t>(g) * h);
        std::iota(grp.begin(), grp.end(), offset);
        u.groups_.push_back(std::move(grp));
        offset += g * h;
    }
    u.size_ = offset;
    u.index_groups();
    return u;
}

Universe Universe::regular(int rows, int cols, int h) {
    if (rows < 1 || cols < 1 || h < 1) raise(ErrorKind::parameter, "regular universe needs positive u, v, h");
    if (cols % h != 0) raise(ErrorKind::shape, "subgroup order " + std::to_string(h) + " does not divide " + std::to_string(cols));
    Universe u;
    u.shape_ = Shape::regular;
    u.u_ = rows;
    u.v_ = cols;
    u.h_ = h;
    u.size_ = rows * cols;
    const int n = cols / h;
    u.groups_.assign(n, {});
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) u.groups_[c % n].push_back(r * cols + c);
    for (auto& g : u.groups_) std::sort(g.begin(), g.end());
    u.index_groups();
    return u;
}

void Universe::index_groups() {
    group_of_.assign(size_, -1);
    for (int gi = 0; gi < group_count(); ++gi)
        for (int p : groups_[gi]) {
            if (group_of_[p] != -1) raise(ErrorKind::shape, "point " + std::to_string(p) + " lies in two groups");
            group_of_[p] = gi;
        }
}

int Universe::order() const {
    switch (shape_) {
        case Shape::plain: return 1;
        case Shape::cyclic: return h_;
        case Shape::regular: return v_;
    }
    return 1;
}

int Universe::shift(int id, int delta) const {
    switch (shape_) {
        case Shape::plain: return id;
        case Shape::cyclic: {
            int j = id % h_;  // offsets are multiples of h
            return id - j + mod(static_cast<long long>(j) + delta, h_);
        }
        case Shape::regular: {
            int c = id % v_;
            return id - c + mod(static_cast<long long>(c) + delta, v_);
        }
    }
    return id;
}

int Universe::dimension() const {
    switch (shape_) {
        case Shape::plain: return 1;
        case Shape::cyclic: return 3;
        case Shape::regular: return 2;
    }
    return 1;
}

std::vector<int> Universe::coords(int id) const {
    if (id < 0 || id >= size_) raise(ErrorKind::coordinate, "point id out of range");
    switch (shape_) {
        case Shape::plain: return {id};
        case Shape::cyclic: {
            int x = static_cast<int>(std::upper_bound(offsets_.begin(), offsets_.end(), id) - offsets_.begin()) - 1;
            int rest = id - offsets_[x];
            return {x, rest / h_, rest % h_};
        }
        case Shape::regular: return {id / v_, id % v_};
    }
    return {};
}

int Universe::id(const std::vector<int>& c) const {
    auto bad = [&] {
        std::string s = "(";
        for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
        raise(ErrorKind::coordinate, "point " + s + ") outside " + describe());
    };
    if (static_cast<int>(c.size()) != dimension()) bad();
    switch (shape_) {
        case Shape::plain:
            if (c[0] < 0 || c[0] >= size_) bad();
            return c[0];
        case Shape::cyclic:
            if (c[0] < 0 || c[0] >= static_cast<int>(rows_.size()) || c[1] < 0 || c[1] >= rows_[c[0]] || c[2] < 0 ||
                c[2] >= h_)
                bad();
            return offsets_[c[0]] + c[1] * h_ + c[2];
        case Shape::regular:
            if (c[0] < 0 || c[0] >= u_ || c[1] < 0 || c[1] >= v_) bad();
            return c[0] * v_ + c[1];
    }
    return 0;
}

bool Universe::operator==(const Universe& o) const {
    return shape_ == o.shape_ && size_ == o.size_ && h_ == o.h_ && u_ == o.u_ && v_ == o.v_ && rows_ == o.rows_ &&
           groups_ == o.groups_;
}

std::string Universe::describe() const {
    switch (shape_) {
        case Shape::plain: return "I_" + std::to_string(size_) + " with " + std::to_string(groups_.size()) + " groups";
        case Shape::cyclic: {
            std::string s = "{";
            for (std::size_t i = 0; i < rows_.size(); ++i) s += (i ? "," : "") + std::to_string(rows_[i]);
            return "cyclic rows " + s + "} x Z_" + std::to_string(h_);
        }
        case Shape::regular:
            return "I_" + std::to_string(u_) + " x Z_" + std::to_string(v_) + " (subgroup order " + std::to_string(h_) + ")";
    }
    return "?";
}

// ---------------------------------------------------------------- blocks

std::size_t FanDesign::base_count() const {
    std::size_t n = terminal.size();
    for (const auto& l : layers) n += l.size();
    return n;
}

Block normalize(Block b, const Universe& u) {
    for (int p : b)
        if (p < 0 || p >= u.size()) raise(ErrorKind::coordinate, "block point " + std::to_string(p) + " out of range");
    std::sort(b.begin(), b.end());
    if (std::adjacent_find(b.begin(), b.end()) != b.end()) raise(ErrorKind::shape, "block repeats a point");
    return b;
}

Block shift(const Block& b, int delta, const Universe& u) {
    Block out;
    out.reserve(b.size());
    for (int p : b) out.push_back(u.shift(p, delta));
    std::sort(out.begin(), out.end());
    return out;
}

Block canonicalize(const Block& b, const Universe& u) {
    Block best = shift(b, 0, u);
    for (int d = 1; d < u.order(); ++d) best = std::min(best, shift(b, d, u));
    return best;
}

int stabilizer_order(const Block& b, const Universe& u) {
    Block base = shift(b, 0, u);
    int count = 1;
    for (int d = 1; d < u.order(); ++d)
        if (shift(base, d, u) == base) ++count;
    return count;
}

std::vector<Block> develop(const Block& b, const Universe& u) {
    int len = u.order() / stabilizer_order(b, u);
    std::vector<Block> out;
    for (int d = 0; d < len; ++d) out.push_back(shift(b, d, u));
    return out;
}

std::vector<Block> expand(const std::vector<Block>& blocks, const Universe& u, bool developed) {
    std::vector<Block> out;
    for (const Block& b : blocks) {
        Block nb = normalize(b, u);
        if (developed) {
            out.push_back(std::move(nb));
        } else {
            for (Block& d : develop(nb, u)) out.push_back(std::move(d));
        }
    }
    return out;
}

namespace {

// Orbit representatives of a block list that must be closed under the action.
std::vector<Block> cut_orbits(const std::vector<Block>& all, const Universe& u) {
    std::set<Block> pool;
    for (const Block& b : all) pool.insert(normalize(b, u));
    if (pool.size() != all.size()) raise(ErrorKind::precondition, "repeated block in developed list");
    std::set<Block> reps;
    for (const Block& b : pool) {
        for (const Block& img : develop(b, u))
            if (!pool.count(img)) raise(ErrorKind::precondition, "block list is not invariant under the cyclic action");
        reps.insert(canonicalize(b, u));
    }
    return {reps.begin(), reps.end()};
}

bool closed(const std::vector<Block>& all, const Universe& u, std::string& why) {
    std::set<Block> pool;
    for (const Block& b : all) pool.insert(normalize(b, u));
    for (const Block& b : pool) {
        if (!pool.count(shift(b, 1, u))) {
            why = "shift of a block is missing";
            return false;
        }
    }
    return true;
}

std::string fmt_ids(const std::vector<int>& ids, const Universe& u) {
    std::string s = "{";
    for (std::size_t i = 0; i < ids.size(); ++i) {
        auto c = u.coords(ids[i]);
        s += i ? " " : "";
        if (c.size() == 1) {
            s += std::to_string(c[0]);
        } else {
            s += "(";
            for (std::size_t j = 0; j < c.size(); ++j) s += (j ? "," : "") + std::to_string(c[j]);
            s += ")";
        }
    }
    return s + "}";
}

}  // namespace

FanDesign developed_form(const FanDesign& d) {
    FanDesign out{d.universe, {}, {}, true};
    for (const auto& l : d.layers) out.layers.push_back(expand(l, d.universe, d.developed));
    out.terminal = expand(d.terminal, d.universe, d.developed);
    return out;
}

FanDesign base_form(const FanDesign& d) {
    if (!d.developed) return d;
    FanDesign out{d.universe, {}, {}, false};
    for (const auto& l : d.layers) out.layers.push_back(cut_orbits(l, d.universe));
    out.terminal = cut_orbits(d.terminal, d.universe);
    return out;
}

HDesign developed_form(const HDesign& d) { return {d.universe, d.t, expand(d.blocks, d.universe, d.developed), true}; }

HDesign base_form(const HDesign& d) {
    if (!d.developed) return d;
    return {d.universe, d.t, cut_orbits(d.blocks, d.universe), false};
}

namespace {

std::vector<Block> map_blocks(const std::vector<Block>& blocks, const Universe& target,
                              const std::function<int(int)>& map) {
    std::vector<Block> out;
    for (const Block& b : blocks) {
        Block m;
        for (int p : b) m.push_back(map(p));
        out.push_back(normalize(std::move(m), target));
    }
    return out;
}

}  // namespace

FanDesign relabel(const FanDesign& d, const Universe& target, const std::function<int(int)>& map) {
    FanDesign all = developed_form(d);
    FanDesign out{target, {}, {}, true};
    for (const auto& l : all.layers) out.layers.push_back(map_blocks(l, target, map));
    out.terminal = map_blocks(all.terminal, target, map);
    return target.order() == 1 ? out : base_form(out);
}

HDesign relabel(const HDesign& d, const Universe& target, const std::function<int(int)>& map) {
    HDesign all = developed_form(d);
    HDesign out{target, d.t, map_blocks(all.blocks, target, map), true};
    return target.order() == 1 ? out : base_form(out);
}

std::vector<int> block_sizes(const std::vector<Block>& blocks) {
    std::set<int> s;
    for (const Block& b : blocks) s.insert(static_cast<int>(b.size()));
    return {s.begin(), s.end()};
}

// ---------------------------------------------------------------- verifiers

FanReport verify_fan(const FanDesign& d) {
    const Universe& u = d.universe;
    FanReport r;
    FanDesign all = developed_form(d);

    r.partition_ok = true;
    for (int p = 0; p < u.size(); ++p)
        if (u.group_of(p) < 0) {
            r.partition_ok = false;
            r.failure = "point " + std::to_string(p) + " lies in no group";
            r.witness = {p};
            break;
        }

    bool layers_ok = r.partition_ok;
    for (std::size_t i = 0; i < all.layers.size(); ++i) {
        bool ok = true;
        std::string why;
        std::vector<int> wit;
        for (const Block& b : all.layers[i]) {
            std::set<int> seen;
            for (int p : b)
                if (!seen.insert(u.group_of(p)).second && ok) {
                    ok = false;
                    why = "layer " + std::to_string(i) + " block " + fmt_ids(b, u) + " meets a group twice";
                    wit = b;
                }
        }
        if (ok) {
            detail::SubsetCounter pairs(u.size(), 2);
            for (const auto& g : u.groups()) pairs.add_all(g);
            for (const Block& b : all.layers[i]) pairs.add_all(b);
            for (std::uint64_t x = 0; x < pairs.size() && ok; ++x)
                if (pairs.count(x) != 1) {
                    ok = false;
                    wit = detail::unrank_subset(x, 2);
                    why = "layer " + std::to_string(i) + ": pair " + fmt_ids(wit, u) + " covered " +
                          std::to_string(pairs.count(x)) + " times";
                }
        }
        r.layers_ok.push_back(ok);
        if (!ok && layers_ok) {
            layers_ok = false;
            r.failure = why;
            r.witness = wit;
        }
    }

    detail::SubsetCounter triples(u.size(), 3);
    for (const auto& g : u.groups()) triples.add_all(g);
    for (const auto& l : all.layers)
        for (const Block& b : l) triples.add_all(b);
    for (const Block& b : all.terminal) triples.add_all(b);
    r.three_design_ok = true;
    for (std::uint64_t x = 0; x < triples.size(); ++x)
        if (triples.count(x) != 1) {
            r.three_design_ok = false;
            if (r.failure.empty()) {
                r.witness = detail::unrank_subset(x, 3);
                r.failure = "3-subset " + fmt_ids(r.witness, u) + " covered " + std::to_string(triples.count(x)) + " times";
            }
            break;
        }
    r.ok = r.partition_ok && layers_ok && r.three_design_ok;
    return r;
}

namespace {

ActionReport check_action(const std::vector<const std::vector<Block>*>& families, const Universe& u, bool developed,
                          bool strict) {
    ActionReport r;
    r.invariant = true;
    if (developed) {
        for (const auto* f : families) {
            std::string why;
            if (!closed(*f, u, why)) {
                r.invariant = false;
                r.failure = why;
                break;
            }
        }
    }
    r.strict = true;
    for (const auto* f : families) {
        for (const Block& b : *f)
            if (stabilizer_order(normalize(b, u), u) != 1) {
                r.strict = false;
                if (r.failure.empty()) r.failure = "block " + fmt_ids(normalize(b, u), u) + " has a nontrivial stabilizer";
                break;
            }
        if (!r.strict) break;
    }
    r.ok = r.invariant && (!strict || r.strict);
    return r;
}

std::vector<const std::vector<Block>*> families(const FanDesign& d) {
    std::vector<const std::vector<Block>*> f;
    for (const auto& l : d.layers) f.push_back(&l);
    f.push_back(&d.terminal);
    return f;
}

}  // namespace

ActionReport verify_h_cyclic(const FanDesign& d, bool strict) {
    if (d.universe.shape() != Shape::cyclic) raise(ErrorKind::shape, "design is not on a cyclic point set");
    return check_action(families(d), d.universe, d.developed, strict);
}

ActionReport verify_h_cyclic(const HDesign& d, bool strict) {
    if (d.universe.shape() != Shape::cyclic) raise(ErrorKind::shape, "design is not on a cyclic point set");
    return check_action({&d.blocks}, d.universe, d.developed, strict);
}

ActionReport verify_regular(const FanDesign& d, bool strict) {
    if (d.universe.shape() != Shape::regular) raise(ErrorKind::shape, "design is not on a regular point set");
    return check_action(families(d), d.universe, d.developed, strict);
}

HReport verify_h_design(const HDesign& d) {
    const Universe& u = d.universe;
    if (d.t < 1) raise(ErrorKind::parameter, "t must be positive");
    HReport r;
    auto all = expand(d.blocks, u, d.developed);
    r.transversal = true;
    for (const Block& b : all) {
        std::set<int> seen;
        for (int p : b)
            if (!seen.insert(u.group_of(p)).second) {
                r.transversal = false;
                r.failure = "block " + fmt_ids(b, u) + " meets a group twice";
                r.witness = b;
                break;
            }
        if (!r.transversal) break;
    }
    detail::SubsetCounter counter(u.size(), d.t);
    for (const Block& b : all) counter.add_all(b);
    r.coverage_ok = true;
    for (std::uint64_t x = 0; x < counter.size(); ++x) {
        auto s = detail::unrank_subset(x, d.t);
        std::set<int> gs;
        for (int p : s) gs.insert(u.group_of(p));
        int want = static_cast<int>(gs.size()) == d.t ? 1 : 0;
        if (counter.count(x) != want) {
            r.coverage_ok = false;
            if (r.failure.empty()) {
                r.witness = s;
                r.failure = std::to_string(d.t) + "-subset " + fmt_ids(s, u) + " covered " +
                            std::to_string(counter.count(x)) + " times, expected " + std::to_string(want);
            }
            break;
        }
    }
    r.ok = r.transversal && r.coverage_ok;
    return r;
}

RoSQSReport verify_rosqs(const RoSQS& r) {
    RoSQSReport rep;
    if (r.n < 4) raise(ErrorKind::parameter, "RoSQS order must be at least 4");
    if (mod(r.n, 6) != 2 && mod(r.n, 6) != 4) {
        rep.failure = "order " + std::to_string(r.n) + " is not 2 or 4 mod 6";
        return rep;
    }
    const int m = r.n - 1;
    const int inf = m;
    std::set<Block> all;
    for (const auto& b : r.base_blocks) {
        if (b.size() != 4) raise(ErrorKind::shape, "RoSQS blocks must have 4 points");
        Block base;
        for (int p : b) {
            if (p < -1 || p >= m) raise(ErrorKind::coordinate, "RoSQS point " + std::to_string(p) + " out of range");
            base.push_back(p == -1 ? inf : p);
        }
        std::sort(base.begin(), base.end());
        if (std::adjacent_find(base.begin(), base.end()) != base.end()) raise(ErrorKind::shape, "block repeats a point");
        for (int d = 0; d < m; ++d) {
            Block s;
            for (int p : base) s.push_back(p == inf ? inf : (p + d) % m);
            std::sort(s.begin(), s.end());
            all.insert(s);
        }
    }
    detail::SubsetCounter counter(r.n, 3);
    for (const Block& b : all) counter.add_all(b);
    for (std::uint64_t x = 0; x < counter.size(); ++x)
        if (counter.count(x) != 1) {
            rep.witness = detail::unrank_subset(x, 3);
            for (int& p : rep.witness)
                if (p == inf) p = -1;
            rep.failure = "3-subset covered " + std::to_string(counter.count(x)) + " times";
            return rep;
        }
    rep.ok = true;
    return rep;
}

HDesign layer_as_h_design(const FanDesign& d, int i) {
    if (i < 0 || i >= d.s()) raise(ErrorKind::parameter, "layer index out of range");
    return {d.universe, 2, d.layers[i], d.developed};
}

// ---------------------------------------------------------------- admissibility

bool fg0_necessary(int g, int n, const std::vector<int>& kt) {
    if (g < 1 || n < 2 || kt.empty()) raise(ErrorKind::parameter, "need g >= 1, n >= 2 and a block size");
    long long alpha = 0, beta = 0, gamma = 0;
    for (int k : kt) {
        if (k < 3) raise(ErrorKind::parameter, "block sizes must be at least 3");
        alpha = std::gcd(alpha, static_cast<long long>(k) * (k - 1) * (k - 2));
        beta = std::gcd(beta, static_cast<long long>(k - 1) * (k - 2));
        gamma = std::gcd(gamma, static_cast<long long>(k - 2));
    }
    long long G = g, N = n;
    if ((G * G * N * (N - 1) * (G * N + G - 3)) % alpha != 0) return false;
    if ((G * (N - 1) * (G * N + G - 3)) % beta != 0) return false;
    if (g == 1) return mod(N, gamma) == mod(2, gamma);
    return mod(G * N, gamma) == mod(2, gamma) && mod(G, gamma) == mod(2, gamma);
}

bool fg0_k4_exists(int g, int n) {
    if (g < 1 || n < 2) raise(ErrorKind::parameter, "need g >= 1 and n >= 2");
    if (g == 1) return mod(n, 6) == 2 || mod(n, 6) == 4;
    return g % 2 == 0 && (static_cast<long long>(g) * (n - 1) * (n - 2)) % 3 == 0;
}

bool h43_exists(int n, int g) {
    if (n < 4 || g < 1) raise(ErrorKind::parameter, "need n >= 4 and g >= 1");
    if (n != 5) return (static_cast<long long>(g) * n) % 2 == 0 && (static_cast<long long>(g) * (n - 1) * (n - 2)) % 3 == 0;
    return g % 2 == 0 && g != 2 && mod(g, 48) != 10 && mod(g, 48) != 26;
}

}  // namespace ooc
