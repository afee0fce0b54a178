#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ooc/core.hpp"

namespace ooc {

// Point sets used by group-divisible designs.
//  plain:   I_n with explicit groups, trivial action
//  cyclic:  union of {x} x I_{g_x} x Z_h, group x = {x} x I_{g_x} x Z_h, action (x,y,j) -> (x,y,j+1)
//  regular: I_u x Z_v, groups I_u x (H + i) with H the order-h subgroup, action (r,c) -> (r,c+1)
enum class Shape { plain, cyclic, regular };

class Universe {
public:
    static Universe plain(int points, std::vector<std::vector<int>> groups);
    static Universe cyclic(std::vector<int> group_rows, int h);
    static Universe regular(int u, int v, int h);

    Shape shape() const { return shape_; }
    int size() const { return size_; }
    // Order of the cyclic group acting on the points.
    int order() const;
    int shift(int id, int delta) const;
    int group_of(int id) const { return group_of_[id]; }
    int group_count() const { return static_cast<int>(groups_.size()); }
    const std::vector<std::vector<int>>& groups() const { return groups_; }

    // Coordinate tuples: 1 entry (plain), 3 (cyclic) or 2 (regular).
    int dimension() const;
    std::vector<int> coords(int id) const;
    int id(const std::vector<int>& coords) const;

    const std::vector<int>& group_rows() const { return rows_; }  // cyclic
    int h() const { return h_; }                                  // cyclic order or regular subgroup order
    int u() const { return u_; }                                  // regular
    int v() const { return v_; }                                  // regular

    bool operator==(const Universe& o) const;
    std::string describe() const;

private:
    void index_groups();

    Shape shape_ = Shape::plain;
    int size_ = 0;
    int h_ = 1;
    int u_ = 0;
    int v_ = 0;
    std::vector<int> rows_;
    std::vector<int> offsets_;
    std::vector<std::vector<int>> groups_;
    std::vector<int> group_of_;
};

using Block = std::vector<int>;  // sorted point ids

// Blocks are base blocks under the universe's action unless `developed`
// is set, in which case they are the complete block list.
struct FanDesign {
    Universe universe = Universe::plain(0, {});
    std::vector<std::vector<Block>> layers;
    std::vector<Block> terminal;
    bool developed = false;

    int s() const { return static_cast<int>(layers.size()); }
    std::size_t base_count() const;
};

struct HDesign {
    Universe universe = Universe::plain(0, {});
    int t = 3;
    std::vector<Block> blocks;
    bool developed = false;
};

// Rotational SQS on Z_{n-1} + {infinity}; infinity is written -1.
struct RoSQS {
    int n = 0;
    std::vector<std::vector<int>> base_blocks;
};

Block normalize(Block b, const Universe& u);
Block shift(const Block& b, int delta, const Universe& u);
Block canonicalize(const Block& b, const Universe& u);
int stabilizer_order(const Block& b, const Universe& u);
std::vector<Block> develop(const Block& b, const Universe& u);
std::vector<Block> expand(const std::vector<Block>& blocks, const Universe& u, bool developed);

// Same design with every block listed explicitly / cut back to orbit representatives.
FanDesign developed_form(const FanDesign& d);
FanDesign base_form(const FanDesign& d);  // throws precondition error if not invariant
HDesign developed_form(const HDesign& d);
HDesign base_form(const HDesign& d);

// Carries every block through `map` into `target` and re-cuts orbits there.
FanDesign relabel(const FanDesign& d, const Universe& target, const std::function<int(int)>& map);
HDesign relabel(const HDesign& d, const Universe& target, const std::function<int(int)>& map);

struct FanReport {
    bool ok = false;
    bool partition_ok = false;
    std::vector<bool> layers_ok;
    bool three_design_ok = false;
    std::string failure;
    std::vector<int> witness;  // offending point ids
};

struct ActionReport {
    bool ok = false;
    bool invariant = false;
    bool strict = false;
    std::string failure;
};

struct HReport {
    bool ok = false;
    bool transversal = false;
    bool coverage_ok = false;
    std::string failure;
    std::vector<int> witness;
};

struct RoSQSReport {
    bool ok = false;
    std::string failure;
    std::vector<int> witness;
};

FanReport verify_fan(const FanDesign& d);
// Requires a cyclic universe.
ActionReport verify_h_cyclic(const FanDesign& d, bool strict);
ActionReport verify_h_cyclic(const HDesign& d, bool strict);
// Requires a regular universe.
ActionReport verify_regular(const FanDesign& d, bool strict);
HReport verify_h_design(const HDesign& d);
RoSQSReport verify_rosqs(const RoSQS& r);

// Layer i together with the groups, read as an H(n, g, K_i, 2).
HDesign layer_as_h_design(const FanDesign& d, int i);

std::vector<int> block_sizes(const std::vector<Block>& blocks);

// Divisibility conditions for a 0-FG(3,(-,K_T),gn) of type g^n.
bool fg0_necessary(int g, int n, const std::vector<int>& kt);
// Existence of a 0-FG(3,(-,4),gn) of type g^n.
bool fg0_k4_exists(int g, int n);
// Known existence of an H(n,g,4,3); for n = 5 only the known sufficient families.
bool h43_exists(int n, int g);

}  // namespace ooc
