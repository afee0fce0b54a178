#pragma once

#include <string>
#include <vector>

#include "ooc/core.hpp"
#include "ooc/designs.hpp"

namespace ooc {

struct TraceStep {
    std::string name;
    long long blocks = 0;  // base blocks contributed by this step
};

struct Trace {
    std::string recipe;
    std::vector<std::string> inputs;
    std::vector<TraceStep> steps;
    std::string output;
    long long total = 0;
};

template <class T>
struct Built {
    T design;
    Trace trace;
};

// Families making up the strictly p-cyclic SQS(2 x p) built from an RoSQS(p+1).
struct HartmanParts {
    std::vector<BaseBlock> a1, a1_image, a2, a2_image, a3;
};

// RoSQS(p+1), p = 1 (mod 6) prime -> strictly p-cyclic SQS(2 x p).
HartmanParts hartman_parts(const RoSQS& r);
Built<CyclicPacking> hartman(const RoSQS& r);

// Fills every group {x} x I_g x Z_h of a strictly h-cyclic 0-FG with a
// strictly h-cyclic (g x h) packing taken from `fillers` (matched on u = g).
Built<CyclicPacking> filling_1(const FanDesign& master, const std::vector<CyclicPacking>& fillers);

// Fills the groups I_u x (H + i) of a strictly (u,h)-regular 0-FG on I_u x Z_v
// with a strictly h-cyclic (u x h) packing dilated by v/h.
Built<CyclicPacking> filling_2(const FanDesign& master, const CyclicPacking& filler);

// Weighting a strictly h1-cyclic 1-FG of type (g1 h1)^n: each layer block of
// size k gets a strictly h2-cyclic s-FG of type (g2 h2)^k from `fans`, each
// terminal block of size k an h2-cyclic H(k, g2 h2, L, 3) from `hs`.
Built<FanDesign> weighting_1(const FanDesign& master, const std::vector<FanDesign>& fans,
                             const std::vector<HDesign>& hs);

// Same for a strictly (g1,h1)-regular 1-FG on I_g1 x Z_{h1 n}; the result is a
// strictly (g1 g2, h1 h2)-regular s-FG on I_{g1 g2} x Z_{h1 h2 n}.
Built<FanDesign> weighting_2(const FanDesign& master, const std::vector<FanDesign>& fans,
                             const std::vector<HDesign>& hs);

// h1-cyclic H(n, g1 h1, K, t) weighted block-by-block with h2-cyclic
// H(k, g2 h2, L, t) designs -> h1 h2-cyclic H(n, g1 g2 h1 h2, L, t).
Built<HDesign> weighting_3(const HDesign& master, const std::vector<HDesign>& ingredients);

// (u x v) -> (u v1 x v2) with v = v1 v2; every base block yields v1 base blocks.
Built<CyclicPacking> fold(const CyclicPacking& p, int v1);

// Semi-cyclic 0-FG of type (2v)^2 on I_2 x Z_2v -> strictly v-cyclic one on I_2 x I_2 x Z_v.
Built<FanDesign> semicyclic_to_vcyclic(const FanDesign& d);
// Strictly (u,h)-regular design -> strictly h1-cyclic design of type (uh)^{v/h}, h1 | h.
Built<FanDesign> regular_to_h1cyclic(const FanDesign& d, int h1);
// Strictly h-cyclic design -> strictly h1-cyclic design on the same points, h1 | h.
Built<FanDesign> restrict_action(const FanDesign& d, int h1);
Built<HDesign> restrict_action(const HDesign& d, int h1);
// Perfect (2 x v) packing -> strictly (2,1)-regular 1-FG(3,(2,4),2v) of type 2^v.
Built<FanDesign> perfect_to_regular_1fg(const CyclicPacking& p);
// RoSQS(v+1) -> strictly v-cyclic 1-FG(3,(3,4),v) of type 1^v.
Built<FanDesign> rosqs_to_1fg(const RoSQS& r);
// Plain design with equal groups -> the same design on I_n x I_g x Z_1, the
// point at position y of group x becoming (x, y, 0).
FanDesign as_cyclic(const FanDesign& d);
HDesign as_cyclic(const HDesign& d);
// 0-FG -> 1-FG by adding every pair of points from distinct groups as a layer.
Built<FanDesign> add_pair_layer(const FanDesign& d);
// Semi-cyclic H(4,h,4,3): blocks {(0,a),(1,b),(2,c),(3,a-b+c)} on I_4 x I_1 x Z_h.
HDesign semicyclic_h4(int h);

}  // namespace ooc
