#include "ooc/packing.hpp"

#include "subsets.hpp"

namespace ooc {
namespace {

std::vector<int> ids_of(const BaseBlock& b, int v) {
    std::vector<int> ids;
    ids.reserve(b.size());
    for (const Point& p : b.points) ids.push_back(p.row * v + p.col);
    return ids;  // sorted because points are sorted by (row, col)
}

std::vector<Point> points_of(const std::vector<int>& ids, int v) {
    std::vector<Point> pts;
    for (int id : ids) pts.push_back({id / v, id % v});
    return pts;
}

detail::SubsetCounter cover(const CyclicPacking& p, PackingReport* report) {
    detail::SubsetCounter counter(p.u * p.v, p.t);
    for (const BaseBlock& b : p.base_blocks) {
        auto orbit = develop(b, p.v);
        if (report) {
            report->orbit_lengths.push_back(static_cast<int>(orbit.size()));
            report->developed_blocks += static_cast<long long>(orbit.size());
        }
        for (const BaseBlock& d : orbit) counter.add_all(ids_of(d, p.v));
    }
    return counter;
}

}  // namespace

PackingReport verify_packing(const CyclicPacking& p) {
    check_shape(p);
    PackingReport r;
    auto counter = cover(p, &r);
    r.strictly_cyclic = true;
    for (int len : r.orbit_lengths)
        if (len != p.v) r.strictly_cyclic = false;
    for (std::uint64_t i = 0; i < counter.size(); ++i) {
        int c = counter.count(i);
        if (c == 0) ++r.leave_size;
        if (c > 1 && !r.violation) {
            r.violation = points_of(detail::unrank_subset(i, p.t), p.v);
            r.violation_count = c;
        }
    }
    r.valid = !r.violation.has_value();
    return r;
}

std::vector<BaseBlock> develop_all(const CyclicPacking& p) {
    check_shape(p);
    std::vector<BaseBlock> out;
    for (const BaseBlock& b : p.base_blocks)
        for (BaseBlock& d : develop(b, p.v)) out.push_back(std::move(d));
    return out;
}

std::vector<std::vector<Point>> leave(const CyclicPacking& p) {
    check_shape(p);
    auto counter = cover(p, nullptr);
    std::vector<std::vector<Point>> out;
    for (std::uint64_t i = 0; i < counter.size(); ++i) {
        int c = counter.count(i);
        if (c > 1) raise(ErrorKind::precondition, "leave requested for an invalid packing");
        if (c == 0) out.push_back(points_of(detail::unrank_subset(i, p.t), p.v));
    }
    return out;
}

bool is_perfect(const CyclicPacking& p) {
    auto r = verify_packing(p);
    return r.valid && r.strictly_cyclic && r.leave_size == 0;
}

}  // namespace ooc
