#ifndef DDSFC_HAMPATH_HPP
#define DDSFC_HAMPATH_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "ddsfc/grid_graph.hpp"
#include "ddsfc/tree.hpp"

namespace ddsfc {

/// Minimum Hamiltonian path on a box from a fixed entry vertex to any vertex
/// of an exit face. Coordinates are local to the box.
struct HamPathProblem {
    Extent box;
    std::vector<double> values; // row-major over `box`
    Coord entry{0, 0, 0};
    Face exit = Face::XMax;
};

struct HamPathStats {
    std::size_t nodes_expanded = 0;
    std::size_t bound_prunes = 0;
    std::size_t feasibility_prunes = 0;
    std::size_t direct_solves = 0;
    std::size_t splits = 0;
};

struct HamPathOptions {
    bool branch_and_bound = true;
    std::size_t direct_limit = 32;
    HamPathStats* stats = nullptr;
};

struct HamPathResult {
    Curve curve;
    double cost = 0.0;
};

/// f(P) = sum_i |s(v_{i+1}) - s(v_i)|, accumulated in path order.
inline double path_cost(const Curve& curve, std::span<const double> values)
{
    if (curve.empty()) throw DataError("path_cost of an empty curve");
    double c = 0.0;
    const Extent& e = curve.domain();
    for (std::size_t i = 1; i < curve.size(); ++i)
        c += std::abs(values[e.index(curve[i].coord)] - values[e.index(curve[i - 1].coord)]);
    return c;
}

inline double path_cost(const Curve& curve, const ScalarField& field) { return path_cost(curve, field.values()); }

inline bool on_face(const Extent& box, const Coord& c, Face f)
{
    const int a = face_axis(f);
    return c[a] == (face_is_max(f) ? box.n[a] - 1 : 0);
}

inline std::vector<Coord> face_vertices(const Extent& box, Face f)
{
    std::vector<Coord> out;
    for (std::size_t i = 0; i < box.size(); ++i)
        if (on_face(box, box.coord(i), f)) out.push_back(box.coord(i));
    std::sort(out.begin(), out.end());
    return out;
}

inline int checker_color(const Coord& c) { return (c[0] + c[1] + c[2]) & 1; }

/// Checkerboard condition for a Hamiltonian path between the entry and v_t:
/// an even vertex count needs opposite colors, an odd count needs both
/// endpoints on the majority color (the color of the origin).
inline bool parity_feasible(const Extent& box, const Coord& entry, const Coord& v_t)
{
    const std::size_t n = box.size();
    if (n == 1) return entry == v_t;
    if (entry == v_t) return false;
    if (n % 2 == 0) return checker_color(entry) != checker_color(v_t);
    return checker_color(entry) == 0 && checker_color(v_t) == 0;
}

inline bool parity_feasible(const HamPathProblem& p, const Coord& v_t) { return parity_feasible(p.box, p.entry, v_t); }

namespace detail {

inline void validate_problem(const HamPathProblem& p)
{
    if (p.values.size() != p.box.size()) throw DataError("hampath values do not match box " + p.box.str());
    if (!p.box.contains(p.entry)) throw DataError("entry " + to_string(p.entry) + " outside box " + p.box.str());
    if (face_axis(p.exit) >= p.box.rank) throw DataError(std::string("exit face ") + face_name(p.exit) + " not in a " +
                                                         std::to_string(p.box.rank) + "D box");
}

/// Depth-first search with an explicit stack over a box of at most 64
/// vertices. Finds the minimum-cost Hamiltonian path from `entry` ending at
/// one of `targets`, ties broken by lexicographic vertex sequence.
class ExhaustiveSearch {
public:
    ExhaustiveSearch(const Extent& box, std::span<const double> values, const HamPathOptions& opt)
        : box_(box), values_(values), opt_(opt), n_(box.size())
    {
        if (n_ > 64) throw UsageError("exhaustive search supports at most 64 vertices, got " + std::to_string(n_));
        nbrs_.resize(n_);
        nbr_mask_.assign(n_, 0);
        for (std::size_t i = 0; i < n_; ++i) {
            const Coord c = box.coord(i);
            for (const auto& o : neighbor_offsets(box.rank)) {
                const Coord d = c + o;
                if (!box.contains(d)) continue;
                nbrs_[i].push_back(static_cast<int>(box.index(d)));
                nbr_mask_[i] |= bit(box.index(d));
            }
            std::sort(nbrs_[i].begin(), nbrs_[i].end(),
                      [&](int a, int b) { return box.coord(static_cast<std::size_t>(a)) < box.coord(static_cast<std::size_t>(b)); });
            if (checker_color(c) == 0) color0_ |= bit(i);
        }
    }

    /// Runs one search per target (in the given order), sharing the bound.
    std::optional<std::pair<std::vector<int>, double>> run(int entry, const std::vector<int>& targets)
    {
        best_.clear();
        best_cost_ = std::numeric_limits<double>::infinity();
        for (int t : targets) search(entry, t);
        if (best_.empty()) return std::nullopt;
        return std::make_pair(best_, best_cost_);
    }

private:
    static std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << i; }

    struct Frame {
        int v;
        std::size_t next = 0;
        double cost;
    };

    /// Three-way lexicographic comparison of the first `len` vertices.
    int lex_compare(const std::vector<int>& a, const std::vector<int>& b, std::size_t len) const
    {
        for (std::size_t i = 0; i < len; ++i) {
            if (a[i] == b[i]) continue;
            return box_.coord(static_cast<std::size_t>(a[i])) < box_.coord(static_cast<std::size_t>(b[i])) ? -1 : 1;
        }
        return 0;
    }

    /// Checks necessary conditions for completing the path from `v` through
    /// every vertex in `free` to `target`. Returns a lower bound on the
    /// remaining cost (each free vertex is entered through one of its usable
    /// edges), or a negative value when completion is impossible.
    double completion_bound(int v, std::uint64_t free, int target) const
    {
        if (free == 0) return v == target ? 0.0 : -1.0;
        if (!(free & bit(static_cast<std::size_t>(target)))) return -1.0;
        // Colors must alternate from v to target.
        const int c0 = std::popcount(free & color0_) + static_cast<int>((color0_ >> v) & 1);
        const int c1 = std::popcount(free) + 1 - c0;
        const bool same = ((color0_ >> v) & 1) == ((color0_ >> target) & 1);
        if (same ? std::abs(c0 - c1) != 1 : c0 != c1) return -1.0;
        // Degree: inner vertices need two usable neighbors, the target one.
        const std::uint64_t usable = free | bit(static_cast<std::size_t>(v));
        // Two bounds: every free vertex is entered through one usable edge;
        // and every path edge touches two vertices, inner ones twice.
        double entered = 0.0, halves = 0.0;
        for (std::uint64_t m = free; m; m &= m - 1) {
            const int u = std::countr_zero(m);
            const auto ui = static_cast<std::size_t>(u);
            const std::uint64_t nb = nbr_mask_[ui] & usable;
            if (std::popcount(nb) < (u == target ? 1 : 2)) return -1.0;
            double c1 = std::numeric_limits<double>::infinity(), c2 = c1;
            for (std::uint64_t w = nb; w; w &= w - 1) {
                const double c = std::abs(values_[ui] - values_[static_cast<std::size_t>(std::countr_zero(w))]);
                if (c < c1) {
                    c2 = c1;
                    c1 = c;
                } else if (c < c2) {
                    c2 = c;
                }
            }
            entered += c1;
            halves += u == target ? c1 : c1 + c2;
        }
        double out_of_v = std::numeric_limits<double>::infinity();
        for (std::uint64_t w = nbr_mask_[static_cast<std::size_t>(v)] & free; w; w &= w - 1)
            out_of_v = std::min(out_of_v, std::abs(values_[static_cast<std::size_t>(v)] -
                                                   values_[static_cast<std::size_t>(std::countr_zero(w))]));
        if (std::isinf(out_of_v)) return -1.0;
        const double bound = std::max(entered, 0.5 * (halves + out_of_v));
        // Connectivity of the free set together with v.
        std::uint64_t reached = bit(static_cast<std::size_t>(v)), frontier = reached;
        while (frontier) {
            std::uint64_t grown = 0;
            for (std::uint64_t m = frontier; m; m &= m - 1) grown |= nbr_mask_[static_cast<std::size_t>(std::countr_zero(m))];
            grown &= usable & ~reached;
            reached |= grown;
            frontier = grown;
        }
        return reached == usable ? bound : -1.0;
    }

    void search(int entry, int target)
    {
        if (n_ == 1) {
            if (entry == target) consider({entry}, 0.0);
            return;
        }
        if (entry == target) return;
        std::vector<int> path{entry};
        std::uint64_t visited = bit(static_cast<std::size_t>(entry));
        const std::uint64_t all = n_ == 64 ? ~std::uint64_t{0} : bit(n_) - 1;
        if (completion_bound(entry, all & ~visited, target) < 0.0) {
            note_feasibility_prune();
            return;
        }
        std::vector<Frame> stack{{entry, 0, 0.0}};
        while (!stack.empty()) {
            Frame& f = stack.back();
            const auto& nb = nbrs_[static_cast<std::size_t>(f.v)];
            if (f.next == nb.size()) {
                visited &= ~bit(static_cast<std::size_t>(f.v));
                path.pop_back();
                stack.pop_back();
                continue;
            }
            const int u = nb[f.next++];
            if (visited & bit(static_cast<std::size_t>(u))) continue;
            const double cost = f.cost + std::abs(values_[static_cast<std::size_t>(u)] - values_[static_cast<std::size_t>(f.v)]);
            path.push_back(u);
            if (opt_.branch_and_bound && !best_.empty()) {
                if (cost > best_cost_ || (cost == best_cost_ && lex_compare(path, best_, path.size()) > 0)) {
                    path.pop_back();
                    if (opt_.stats) ++opt_.stats->bound_prunes;
                    continue;
                }
            }
            if (opt_.stats) ++opt_.stats->nodes_expanded;
            const std::uint64_t now = visited | bit(static_cast<std::size_t>(u));
            if (now == all) {
                if (u == target) consider(path, cost);
                path.pop_back();
                continue;
            }
            const double bound = u == target ? -1.0 : completion_bound(u, all & ~now, target);
            if (bound < 0.0) {
                note_feasibility_prune();
                path.pop_back();
                continue;
            }
            // Prune only when provably worse, so float rounding in the bound
            // cannot discard an optimum.
            if (opt_.branch_and_bound && !best_.empty() && cost + bound > best_cost_ + 1e-9 * (1.0 + best_cost_)) {
                if (opt_.stats) ++opt_.stats->bound_prunes;
                path.pop_back();
                continue;
            }
            visited = now;
            stack.push_back({u, 0, cost});
        }
    }

    void consider(const std::vector<int>& path, double cost)
    {
        if (best_.empty() || cost < best_cost_ || (cost == best_cost_ && lex_compare(path, best_, path.size()) < 0)) {
            best_ = path;
            best_cost_ = cost;
        }
    }

    void note_feasibility_prune()
    {
        if (opt_.stats) ++opt_.stats->feasibility_prunes;
    }

    Extent box_;
    std::span<const double> values_;
    HamPathOptions opt_;
    std::size_t n_;
    std::vector<std::vector<int>> nbrs_;
    std::vector<std::uint64_t> nbr_mask_;
    std::uint64_t color0_ = 0;
    std::vector<int> best_;
    double best_cost_ = std::numeric_limits<double>::infinity();
};

/// Exit candidates in search order: increasing |s(v) - mean of v's
/// neighbors|, then lexicographic. Good exits found early tighten the bound.
inline std::vector<Coord> order_targets(const Extent& box, std::span<const double> values, std::vector<Coord> targets)
{
    std::vector<std::pair<double, Coord>> keyed;
    for (const auto& t : targets) {
        double sum = 0.0;
        int cnt = 0;
        for (const auto& o : neighbor_offsets(box.rank)) {
            const Coord d = t + o;
            if (!box.contains(d)) continue;
            sum += values[box.index(d)];
            ++cnt;
        }
        const double key = cnt ? std::abs(values[box.index(t)] - sum / cnt) : 0.0;
        keyed.emplace_back(key, t);
    }
    std::sort(keyed.begin(), keyed.end());
    targets.clear();
    for (const auto& kt : keyed) targets.push_back(kt.second);
    return targets;
}

/// Direct solve restricted to `allowed` exits (all parity-feasible ones on
/// the face when empty).
inline std::optional<HamPathResult> solve_direct(const HamPathProblem& p, const std::vector<Coord>& allowed,
                                                 const HamPathOptions& opt)
{
    std::vector<Coord> targets;
    for (const auto& t : allowed.empty() ? face_vertices(p.box, p.exit) : allowed)
        if (on_face(p.box, t, p.exit) && parity_feasible(p, t)) targets.push_back(t);
    targets = order_targets(p.box, p.values, std::move(targets));
    std::vector<int> ids;
    for (const auto& t : targets) ids.push_back(static_cast<int>(p.box.index(t)));
    if (opt.stats) ++opt.stats->direct_solves;
    ExhaustiveSearch search(p.box, p.values, opt);
    auto found = search.run(static_cast<int>(p.box.index(p.entry)), ids);
    if (!found) return std::nullopt;
    std::vector<Coord> coords;
    for (int v : found->first) coords.push_back(p.box.coord(static_cast<std::size_t>(v)));
    return HamPathResult{Curve::from_coords(p.box, coords), found->second};
}

} // namespace detail

/// Exhaustive minimum over all Hamiltonian paths from the entry to any
/// parity-feasible vertex on the exit face.
inline HamPathResult exhaustive_min_hampath(const HamPathProblem& problem, const HamPathOptions& opt = {})
{
    detail::validate_problem(problem);
    if (problem.box.size() > opt.direct_limit)
        throw UsageError("box " + problem.box.str() + " exceeds the direct-solve limit of " + std::to_string(opt.direct_limit) +
                         " vertices");
    auto r = detail::solve_direct(problem, {}, opt);
    if (!r)
        throw DataError("no Hamiltonian path in " + problem.box.str() + " from " + to_string(problem.entry) + " to face " +
                        face_name(problem.exit));
    return std::move(*r);
}

namespace detail {

struct SubBox {
    Coord lo{0, 0, 0};
    Extent ext;
};

inline HamPathProblem sub_problem(const HamPathProblem& full, const SubBox& b, const Coord& entry_global, Face exit)
{
    HamPathProblem p;
    p.box = b.ext;
    p.values.resize(b.ext.size());
    for (std::size_t i = 0; i < b.ext.size(); ++i) p.values[i] = full.values[full.box.index(b.ext.coord(i) + b.lo)];
    p.entry = entry_global - b.lo;
    p.exit = exit;
    return p;
}

/// Split axes in preference order: longest extent first; on ties, axes
/// other than the exit face's normal first, then by index.
inline std::vector<int> split_axes(const Extent& box, Face exit)
{
    std::vector<int> axes;
    for (int a = 0; a < box.rank; ++a)
        if (box.n[a] >= 2) axes.push_back(a);
    std::stable_sort(axes.begin(), axes.end(), [&](int a, int b) {
        if (box.n[a] != box.n[b]) return box.n[a] > box.n[b];
        return (a != face_axis(exit)) > (b != face_axis(exit));
    });
    return axes;
}

/// Recursive partitioned solve over sub-box `b` (global coordinates).
/// `allowed` restricts exits (global coordinates, empty = whole face).
inline std::optional<std::vector<Coord>> solve_partitioned(const HamPathProblem& full, const SubBox& b, const Coord& entry,
                                                           Face exit, const std::vector<Coord>& allowed,
                                                           const HamPathOptions& opt)
{
    const HamPathProblem local = sub_problem(full, b, entry, exit);
    if (b.ext.size() <= opt.direct_limit) {
        std::vector<Coord> allowed_local;
        for (const auto& c : allowed) allowed_local.push_back(c - b.lo);
        if (!allowed.empty() && allowed_local.empty()) return std::nullopt;
        auto r = solve_direct(local, allowed_local, opt);
        if (!r) return std::nullopt;
        std::vector<Coord> out;
        for (const auto& s : r->curve.steps()) out.push_back(s.coord + b.lo);
        return out;
    }

    for (int axis : split_axes(b.ext, exit)) {
        const int mid = b.ext.n[axis] / 2;
        SubBox lower = b, upper = b;
        lower.ext.n[axis] = mid;
        upper.ext.n[axis] = b.ext.n[axis] - mid;
        upper.lo[axis] += mid;
        const bool entry_low = entry[axis] - b.lo[axis] < mid;
        const SubBox& first = entry_low ? lower : upper;
        const SubBox& second = entry_low ? upper : lower;
        // The exit face must reach into the second half.
        if (face_axis(exit) == axis && face_is_max(exit) != entry_low) continue;
        if (opt.stats) ++opt.stats->splits;
        const Face cut = make_face(axis, entry_low);
        const Coord step = [&] {
            Coord s{0, 0, 0};
            s[axis] = entry_low ? 1 : -1;
            return s;
        }();

        std::vector<Coord> second_allowed;
        for (const auto& c : allowed) {
            Coord l = c - second.lo;
            if (second.ext.contains(l)) second_allowed.push_back(c);
        }
        if (!allowed.empty() && second_allowed.empty()) continue;
        std::vector<Coord> second_targets;
        if (second_allowed.empty()) {
            for (const auto& l : face_vertices(second.ext, exit)) second_targets.push_back(l + second.lo);
        } else {
            second_targets = second_allowed;
        }

        // First-half exits whose neighbor across the cut can start a path
        // in the second half.
        std::vector<Coord> exits;
        for (const auto& l : face_vertices(first.ext, cut)) {
            const Coord g = l + first.lo;
            const Coord next_entry = g + step - second.lo;
            bool ok = false;
            for (const auto& t : second_targets) ok = ok || parity_feasible(second.ext, next_entry, t - second.lo);
            if (ok) exits.push_back(g);
        }
        while (!exits.empty()) {
            auto head = solve_partitioned(full, first, entry, cut, exits, opt);
            if (!head) break;
            const Coord next_entry = head->back() + step;
            auto tail = solve_partitioned(full, second, next_entry, exit, second_allowed, opt);
            if (tail) {
                head->insert(head->end(), tail->begin(), tail->end());
                return head;
            }
            exits.erase(std::find(exits.begin(), exits.end(), head->back()));
        }
    }
    return std::nullopt;
}

} // namespace detail

/// Solves boxes above the direct limit by recursive bisection; each half is
/// solved in order, the first half leaving through the cut toward the second.
inline HamPathResult partitioned_hampath(const HamPathProblem& problem, const HamPathOptions& opt = {})
{
    detail::validate_problem(problem);
    const detail::SubBox whole{{0, 0, 0}, problem.box};
    auto path = detail::solve_partitioned(problem, whole, problem.entry, problem.exit, {}, opt);
    if (!path)
        throw DataError("no Hamiltonian path in " + problem.box.str() + " from " + to_string(problem.entry) + " to face " +
                        face_name(problem.exit));
    Curve curve = Curve::from_coords(problem.box, *path);
    const double cost = path_cost(curve, problem.values);
    return {std::move(curve), cost};
}

} // namespace ddsfc

#endif // DDSFC_HAMPATH_HPP
