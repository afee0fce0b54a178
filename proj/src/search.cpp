#include "ooc/search.hpp"

#include <algorithm>
#include <numeric>
#include <map>
#include <span>

#include "ooc/bounds.hpp"
#include "subsets.hpp"

namespace ooc {
namespace {

using detail::binomial;
using detail::for_each_subset;
using detail::rank_subset;

// Items are the full-length orbits of t-subsets; options are canonical blocks
// whose t-subsets fall into C(k,t) distinct full-length orbits. A strictly
// cyclic packing is a set of options with pairwise disjoint items.
class Solver {
public:
    Solver(int u, int v, int k, int t, const SearchOptions& opts) : u_(u), v_(v), k_(k), t_(t), opts_(opts) {
        n_ = u * v;
        m_ = static_cast<int>(binomial(k, t));
        build_items();
        build_options();
        status_.assign(items_, 0);
        avail_.assign(items_, 0);
        blocked_.assign(options_.size(), 0);
        for (std::size_t o = 0; o < options_.size(); ++o)
            for (int i : option_items(o)) ++avail_[i];
        for (int i = 0; i < items_; ++i)
            if (avail_[i] > 0) ++active_;
        cap_ = items_ / m_;
        if (opts.use_jstar && k == 4 && t == 3) cap_ = std::min<long long>(cap_, jstar(u, v).value);
    }

    SearchResult run() {
        SearchResult r;
        r.upper_bound = cap_;
        if (cap_ > 0) {
            if (opts_.row_filter) root_filtered();
            else recurse();
        }
        r.max_blocks = static_cast<int>(best_.size());
        r.nodes_explored = nodes_;
        r.budget_exhausted = exhausted_;
        r.proved_optimal = !exhausted_ || static_cast<long long>(best_.size()) >= cap_;
        r.witness = {u_, v_, k_, t_, {}};
        for (int o : best_) r.witness.base_blocks.push_back(block_of(o));
        std::sort(r.witness.base_blocks.begin(), r.witness.base_blocks.end());
        return r;
    }

private:
    int point(int row, int col) const { return row * v_ + mod(col, v_); }
    int shift_point(int p, int d) const { return point(p / v_, p % v_ + d); }

    void build_items() {
        std::uint64_t total = binomial(n_, t_);
        if (total > (1u << 26)) raise(ErrorKind::parameter, "search space too large");
        orbit_.assign(total, -1);
        std::vector<int> all(n_);
        std::iota(all.begin(), all.end(), 0);
        std::vector<int> s(t_);
        for_each_subset(all, t_, [&](const int* sub) {
            std::uint64_t r = rank_subset(sub, t_);
            if (orbit_[r] != -1) return;
            std::vector<std::uint64_t> members;
            for (int d = 0; d < v_; ++d) {
                for (int i = 0; i < t_; ++i) s[i] = shift_point(sub[i], d);
                std::sort(s.begin(), s.end());
                members.push_back(rank_subset(s.data(), t_));
            }
            std::sort(members.begin(), members.end());
            bool full = std::adjacent_find(members.begin(), members.end()) == members.end();
            int id = full ? items_++ : -2;
            for (auto x : members) orbit_[x] = id;
        });
    }

    void build_options() {
        std::vector<int> all(n_);
        std::iota(all.begin(), all.end(), 0);
        std::vector<int> shifted(k_);
        std::vector<int> its;
        for_each_subset(all, k_, [&](const int* b) {
            // canonical: no shift gives a lexicographically smaller sorted block
            for (int d = 1; d < v_; ++d) {
                for (int i = 0; i < k_; ++i) shifted[i] = shift_point(b[i], d);
                std::sort(shifted.begin(), shifted.end());
                if (std::lexicographical_compare(shifted.begin(), shifted.end(), b, b + k_)) return;
            }
            its.clear();
            bool ok = true;
            for_each_subset(std::vector<int>(b, b + k_), t_, [&](const int* s) {
                int id = orbit_[rank_subset(s, t_)];
                if (id < 0) ok = false;
                its.push_back(id);
            });
            if (!ok) return;
            std::vector<int> sorted = its;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return;
            options_.emplace_back(b, b + k_);
            option_items_.insert(option_items_.end(), its.begin(), its.end());
        });
        item_options_.assign(items_, {});
        for (std::size_t o = 0; o < options_.size(); ++o)
            for (int i : option_items(o)) item_options_[i].push_back(static_cast<int>(o));
    }

    std::span<const int> option_items(std::size_t o) const { return {option_items_.data() + o * m_, static_cast<std::size_t>(m_)}; }

    BaseBlock block_of(int o) const {
        std::vector<Point> pts;
        for (int p : options_[o]) pts.push_back({p / v_, p % v_});
        return canonicalize(make_block(pts, u_, v_), v_);
    }

    // Takes item i out of play (covered or left uncovered).
    void block_item(int i) {
        if (avail_[i] > 0) --active_;
        status_[i] = 1;
        for (int o : item_options_[i])
            if (blocked_[o]++ == 0)
                for (int j : option_items(o))
                    if (--avail_[j] == 0 && status_[j] == 0) --active_;
    }

    void unblock_item(int i) {
        const auto& os = item_options_[i];
        for (auto it = os.rbegin(); it != os.rend(); ++it)
            if (--blocked_[*it] == 0)
                for (int j : option_items(*it))
                    if (avail_[j]++ == 0 && status_[j] == 0) ++active_;
        status_[i] = 0;
        if (avail_[i] > 0) ++active_;
    }

    void choose(int o) {
        for (int i : option_items(o)) block_item(i);
        chosen_.push_back(o);
    }

    void unchoose(int o) {
        chosen_.pop_back();
        auto its = option_items(o);
        for (auto it = its.rbegin(); it != its.rend(); ++it) unblock_item(*it);
    }

    bool done() const { return exhausted_ || static_cast<long long>(best_.size()) >= cap_; }

    // Returns false once the search should stop.
    bool tick() {
        if (++nodes_ > opts_.node_budget) exhausted_ = true;
        return !exhausted_;
    }

    void record() {
        if (chosen_.size() > best_.size()) best_ = chosen_;
    }

    int pick_item() const {
        int best = -1, best_avail = 0;
        for (int i = 0; i < items_; ++i)
            if (status_[i] == 0 && avail_[i] > 0 && (best < 0 || avail_[i] < best_avail)) {
                best = i;
                best_avail = avail_[i];
                if (best_avail == 1) break;
            }
        return best;
    }

    long long bound() const { return static_cast<long long>(chosen_.size()) + active_ / m_; }

    void recurse() {
        if (!tick()) return;
        record();
        if (done() || bound() <= static_cast<long long>(best_.size())) return;
        int i = pick_item();
        if (i < 0) return;
        for (int o : item_options_[i]) {
            if (blocked_[o]) continue;
            choose(o);
            recurse();
            unchoose(o);
            if (done()) return;
        }
        block_item(i);
        recurse();
        unblock_item(i);
    }

    // Root branching over classes of options under row permutations and
    // unit multipliers of Z_v. These maps send packings to packings and
    // classes to themselves, so once a class has been tried as a member it can
    // be dropped from every later branch.
    void root_filtered() {
        if (!tick()) return;
        record();
        std::vector<int> reps = class_representatives();
        std::vector<int> excluded;
        for (std::size_t c = 0; c < reps.size() && !done(); ++c) {
            int o = reps[c];
            if (!blocked_[o]) {
                choose(o);
                recurse();
                unchoose(o);
            }
            for (std::size_t x = 0; x < options_.size(); ++x)
                if (classes_[x] == static_cast<int>(c)) exclude(static_cast<int>(x)), excluded.push_back(static_cast<int>(x));
        }
        for (auto it = excluded.rbegin(); it != excluded.rend(); ++it) include(*it);
    }

    void exclude(int o) {
        if (blocked_[o]++ == 0)
            for (int j : option_items(o))
                if (--avail_[j] == 0 && status_[j] == 0) --active_;
    }
    void include(int o) {
        if (--blocked_[o] == 0)
            for (int j : option_items(o))
                if (avail_[j]++ == 0 && status_[j] == 0) ++active_;
    }

    // First option of each class, in option order; fills classes_.
    std::vector<int> class_representatives() {
        // generators: row transposition, row cycle, unit multipliers
        std::vector<std::pair<std::vector<int>, int>> gens;
        std::vector<int> id(u_), swap(u_), cycle(u_);
        std::iota(id.begin(), id.end(), 0);
        swap = id;
        if (u_ > 1) std::swap(swap[0], swap[1]), gens.push_back({swap, 1});
        for (int r = 0; r < u_; ++r) cycle[r] = (r + 1) % u_;
        if (u_ > 2) gens.push_back({cycle, 1});
        for (int a = 2; a < v_; ++a)
            if (std::gcd(a, v_) == 1) gens.push_back({id, a});

        std::map<std::vector<int>, int> index;
        for (std::size_t o = 0; o < options_.size(); ++o) index[options_[o]] = static_cast<int>(o);
        std::vector<int> cls(options_.size(), -1);
        std::vector<int> reps, queue;
        std::vector<int> img(k_), tmp(k_), best(k_);
        for (std::size_t o = 0; o < options_.size(); ++o) {
            if (cls[o] >= 0) continue;
            int c = static_cast<int>(reps.size());
            reps.push_back(static_cast<int>(o));
            cls[o] = c;
            queue.assign(1, static_cast<int>(o));
            while (!queue.empty()) {
                int x = queue.back();
                queue.pop_back();
                for (const auto& [perm, a] : gens) {
                    for (int i = 0; i < k_; ++i) {
                        int p = options_[x][i];
                        img[i] = point(perm[p / v_], static_cast<long long>(a) * (p % v_) % v_);
                    }
                    for (int d = 0; d < v_; ++d) {
                        for (int i = 0; i < k_; ++i) tmp[i] = shift_point(img[i], d);
                        std::sort(tmp.begin(), tmp.end());
                        if (d == 0 || tmp < best) best = tmp;
                    }
                    auto it = index.find(best);
                    if (it == index.end()) raise(ErrorKind::internal, "symmetry image is not a search option");
                    if (cls[it->second] < 0) cls[it->second] = c, queue.push_back(it->second);
                }
            }
        }
        classes_ = std::move(cls);
        return reps;
    }

    int u_, v_, k_, t_, n_, m_;
    SearchOptions opts_;
    int items_ = 0;
    std::vector<int> orbit_;
    std::vector<std::vector<int>> options_;
    std::vector<int> option_items_;
    std::vector<std::vector<int>> item_options_;
    std::vector<char> status_;
    std::vector<int> avail_;
    std::vector<int> blocked_;
    std::vector<int> classes_;
    long long active_ = 0;
    long long cap_ = 0;
    std::vector<int> chosen_, best_;
    std::int64_t nodes_ = 0;
    bool exhausted_ = false;
};

}  // namespace

SearchResult max_packing(int u, int v, int k, int t, const SearchOptions& opts) {
    if (u < 1 || v < 1) raise(ErrorKind::parameter, "u and v must be positive");
    if (t < 1 || k <= t) raise(ErrorKind::parameter, "need 1 <= t < k");
    if (opts.node_budget <= 0) raise(ErrorKind::parameter, "node budget must be positive");
    if (u * v < k) {
        SearchResult r;
        r.proved_optimal = true;
        r.witness = {u, v, k, t, {}};
        return r;
    }
    Solver s(u, v, k, t, opts);
    return s.run();
}

}  // namespace ooc
