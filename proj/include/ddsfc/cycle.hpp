#ifndef DDSFC_CYCLE_HPP
#define DDSFC_CYCLE_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "ddsfc/field.hpp"

namespace ddsfc {

inline constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

/// Disjoint oriented cycles over grid vertices, stored as next/prev links.
/// Merging two cycles never touches links outside the two shared faces,
/// except when an association has to flip the direction of one segment.
class CycleBuilder {
public:
    explicit CycleBuilder(std::size_t vertex_count) : next_(vertex_count, kNone), prev_(vertex_count, kNone) {}

    std::size_t next(std::size_t v) const { return next_[v]; }
    std::size_t prev(std::size_t v) const { return prev_[v]; }
    bool contains(std::size_t v) const { return next_[v] != kNone; }

    bool has_edge(std::size_t a, std::size_t b) const { return next_[a] == b || next_[b] == a; }

    /// Inserts `ring` as its own cycle, oriented in list order.
    void add_ring(std::span<const std::size_t> ring)
    {
        for (std::size_t i = 0; i < ring.size(); ++i) link(ring[i], ring[(i + 1) % ring.size()]);
    }

    void link(std::size_t from, std::size_t to)
    {
        next_[from] = to;
        prev_[to] = from;
    }

    /// Vertices of the cycle through `start`, following next links.
    std::vector<std::size_t> walk(std::size_t start) const
    {
        std::vector<std::size_t> out;
        std::size_t v = start;
        do {
            out.push_back(v);
            v = next_[v];
        } while (v != start && v != kNone && out.size() <= next_.size());
        return out;
    }

    /// Reverses the directed segment first -> ... -> last in place.
    void reverse_segment(std::size_t first, std::size_t last)
    {
        std::vector<std::size_t> seg;
        for (std::size_t v = first;; v = next_[v]) {
            seg.push_back(v);
            if (v == last) break;
        }
        for (std::size_t i = 0; i + 1 < seg.size(); ++i) link(seg[i + 1], seg[i]);
    }

    /// Walks the forward segments a0 -> a1 and b0 -> b1 in lockstep and
    /// reports whether the first one ends no later than the second.
    bool first_segment_shorter(std::size_t a0, std::size_t a1, std::size_t b0, std::size_t b1) const
    {
        for (std::size_t a = a0, b = b0;; a = next_[a], b = next_[b]) {
            if (a == a1) return true;
            if (b == b1) return false;
        }
    }

private:
    std::vector<std::size_t> next_;
    std::vector<std::size_t> prev_;
};

/// Corresponding vertices across a shared face: `inner` belongs to a cell
/// already on the growing cycle, `outer` to the fresh unit cycle.
struct FacePair {
    std::size_t inner;
    std::size_t outer;
};

enum class AssociationRule {
    ParallelEdges, // break one parallel edge pair, join four endpoints
    AllEndpoints,  // break two edges per side, join all eight endpoints
};

namespace detail {

/// Square edges between face corners. 2D faces have two corners and one
/// edge; 3D faces list corners in lexicographic (p,q) order.
inline std::vector<std::pair<int, int>> face_edges(std::size_t corners)
{
    if (corners == 2) return {{0, 1}};
    return {{0, 1}, {2, 3}, {0, 2}, {1, 3}};
}

inline std::size_t ring_position(std::span<const std::size_t> ring, std::size_t v)
{
    for (std::size_t i = 0; i < ring.size(); ++i)
        if (ring[i] == v) return i;
    return kNone;
}

inline bool ring_has_edge(std::span<const std::size_t> ring, std::size_t a, std::size_t b)
{
    const std::size_t pa = ring_position(ring, a);
    const std::size_t pb = ring_position(ring, b);
    if (pa == kNone || pb == kNone) return false;
    const std::size_t m = ring.size();
    return (pa + 1) % m == pb || (pb + 1) % m == pa;
}

/// Path through the ring starting at `start` after deleting `removed` edges.
inline std::vector<std::size_t> ring_path(std::span<const std::size_t> ring, std::size_t start,
                                          std::span<const std::pair<std::size_t, std::size_t>> removed)
{
    const std::size_t m = ring.size();
    auto cut = [&](std::size_t pa, std::size_t pb) {
        for (auto [a, b] : removed)
            if ((ring[pa] == a && ring[pb] == b) || (ring[pa] == b && ring[pb] == a)) return true;
        return false;
    };
    const std::size_t p0 = ring_position(ring, start);
    // Leave `start` through its surviving ring edge.
    const bool forward = !cut(p0, (p0 + 1) % m);
    std::vector<std::size_t> path{start};
    std::size_t p = p0;
    for (;;) {
        const std::size_t q = forward ? (p + 1) % m : (p + m - 1) % m;
        if (cut(p, q) || q == p0) break;
        path.push_back(ring[q]);
        p = q;
    }
    return path;
}

} // namespace detail

/// Merges the fresh unit cycle `ring` into the cycle that holds the inner
/// face corners. Rule 1 (a parallel pair of facing edges) is preferred,
/// choosing the pair with the smallest bridge differences; otherwise rule 2
/// breaks two edges on each side. Returns nullopt and leaves `cycles`
/// untouched when neither rule applies.
inline std::optional<AssociationRule> associate_cycles(CycleBuilder& cycles, std::span<const std::size_t> ring,
                                                       std::span<const FacePair> face,
                                                       std::span<const double> values)
{
    const auto edges = detail::face_edges(face.size());
    auto bridge = [&](int k) { return std::abs(values[face[k].inner] - values[face[k].outer]); };
    auto edge = [&](std::size_t a, std::size_t b) { return std::abs(values[a] - values[b]); };

    // Rule 1.
    int best = -1;
    double best_cost = std::numeric_limits<double>::infinity();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto [k, l] = edges[e];
        if (!cycles.has_edge(face[k].inner, face[l].inner)) continue;
        if (!detail::ring_has_edge(ring, face[k].outer, face[l].outer)) continue;
        const double cost = bridge(k) + bridge(l) - edge(face[k].inner, face[l].inner) - edge(face[k].outer, face[l].outer);
        if (cost < best_cost) {
            best_cost = cost;
            best = static_cast<int>(e);
        }
    }
    if (best >= 0) {
        auto [k, l] = edges[static_cast<std::size_t>(best)];
        if (cycles.next(face[k].inner) != face[l].inner) std::swap(k, l);
        // inner k -> inner l becomes  k -> k' ~> l' -> l
        const std::pair<std::size_t, std::size_t> removed[] = {{face[k].outer, face[l].outer}};
        const auto path = detail::ring_path(ring, face[k].outer, removed);
        std::size_t from = face[k].inner;
        for (std::size_t v : path) {
            cycles.link(from, v);
            from = v;
        }
        cycles.link(from, face[l].inner);
        return AssociationRule::ParallelEdges;
    }

    if (face.size() != 4) return std::nullopt;

    // Rule 2: perfect matchings of the four corners by square edges.
    const std::array<std::array<std::pair<int, int>, 2>, 2> matchings{{{{{0, 1}, {2, 3}}}, {{{0, 2}, {1, 3}}}}};
    struct Plan {
        std::array<std::pair<int, int>, 2> inner_edges; // oriented tail -> head on the big cycle
        std::vector<std::size_t> path1;                 // ring path starting at the first tail's partner
        std::vector<std::size_t> path2;
        bool flip = false;
        double cost = 0.0;
    };
    std::optional<Plan> chosen;
    for (const auto& mi : matchings) {
        bool present = true;
        for (auto [k, l] : mi) present = present && cycles.has_edge(face[k].inner, face[l].inner);
        if (!present) continue;
        for (const auto& mj : matchings) {
            bool ring_ok = true;
            for (auto [k, l] : mj) ring_ok = ring_ok && detail::ring_has_edge(ring, face[k].outer, face[l].outer);
            if (!ring_ok) continue;
            Plan plan;
            for (int i = 0; i < 2; ++i) {
                auto [k, l] = mi[static_cast<std::size_t>(i)];
                if (cycles.next(face[k].inner) != face[l].inner) std::swap(k, l);
                plan.inner_edges[static_cast<std::size_t>(i)] = {k, l};
            }
            const std::pair<std::size_t, std::size_t> removed[] = {{face[mj[0].first].outer, face[mj[0].second].outer},
                                                                   {face[mj[1].first].outer, face[mj[1].second].outer}};
            const auto [x1, y1] = plan.inner_edges[0];
            const auto [x2, y2] = plan.inner_edges[1];
            auto path = detail::ring_path(ring, face[x1].outer, removed);
            if (path.back() == face[y1].outer) {
                plan.path1 = std::move(path);
                plan.path2 = detail::ring_path(ring, face[x2].outer, removed);
            } else if (path.back() == face[x2].outer) {
                plan.path1 = std::move(path);
                plan.path2 = detail::ring_path(ring, face[y1].outer, removed);
                plan.flip = true;
            } else {
                continue; // would split into two cycles
            }
            plan.cost = bridge(0) + bridge(1) + bridge(2) + bridge(3);
            for (auto [k, l] : mi) plan.cost -= edge(face[k].inner, face[l].inner);
            for (auto [k, l] : mj) plan.cost -= edge(face[k].outer, face[l].outer);
            if (!chosen || plan.cost < chosen->cost || (plan.cost == chosen->cost && chosen->flip && !plan.flip))
                chosen = std::move(plan);
        }
    }
    if (!chosen) return std::nullopt;

    const auto [x1, y1] = chosen->inner_edges[0];
    const auto [x2, y2] = chosen->inner_edges[1];
    const std::size_t X1 = face[x1].inner, Y1 = face[y1].inner, X2 = face[x2].inner, Y2 = face[y2].inner;
    auto splice = [&](std::size_t from, const std::vector<std::size_t>& path, std::size_t to) {
        for (std::size_t v : path) {
            cycles.link(from, v);
            from = v;
        }
        cycles.link(from, to);
    };
    if (!chosen->flip) {
        // X1 ~> Y1 and X2 ~> Y2 through the ring; big segments keep direction.
        splice(X1, chosen->path1, Y1);
        splice(X2, chosen->path2, Y2);
        return AssociationRule::AllEndpoints;
    }
    // Ring joins X1 with X2 and Y1 with Y2: one big segment must flip.
    // Segment S1 = Y1 -> ... -> X2, segment S2 = Y2 -> ... -> X1.
    std::vector<std::size_t> rev2(chosen->path2.rbegin(), chosen->path2.rend());
    std::vector<std::size_t> rev1(chosen->path1.rbegin(), chosen->path1.rend());
    if (cycles.first_segment_shorter(Y1, X2, Y2, X1)) {
        // Keep S2 forward: X1 -> ring -> X2 -> reversed S1 -> Y1 -> ring -> Y2.
        cycles.reverse_segment(Y1, X2);
        splice(X1, chosen->path1, X2);
        splice(Y1, chosen->path2, Y2);
    } else {
        // Keep S1 forward: X2 -> ring -> X1 -> reversed S2 -> Y2 -> ring -> Y1.
        cycles.reverse_segment(Y2, X1);
        splice(X2, rev1, X1);
        splice(Y2, rev2, Y1);
    }
    return AssociationRule::AllEndpoints;
}

/// Turns a cycle into a path starting at `start` by deleting one of its two
/// incident edges: the one with the larger weighted |value difference|,
/// the predecessor edge on ties. `value_factor` scales the differences
/// (the data-driven generators pass 1 - alpha).
inline std::vector<Coord> cut_cycle_to_path(const std::vector<Coord>& cycle, const Coord& start, const ScalarField& field,
                                            double value_factor = 1.0)
{
    const std::size_t n = cycle.size();
    std::size_t s = kNone;
    for (std::size_t i = 0; i < n; ++i)
        if (cycle[i] == start) s = i;
    if (s == kNone) throw DataError("cut vertex " + to_string(start) + " is not on the cycle");
    if (n == 1) return cycle;
    const Coord& pred = cycle[(s + n - 1) % n];
    const Coord& succ = cycle[(s + 1) % n];
    const double w_pred = value_factor * std::abs(field.at(pred) - field.at(start));
    const double w_succ = value_factor * std::abs(field.at(succ) - field.at(start));
    std::vector<Coord> path;
    path.reserve(n);
    if (w_succ > w_pred) {
        for (std::size_t i = 0; i < n; ++i) path.push_back(cycle[(s + n - i) % n]);
    } else {
        for (std::size_t i = 0; i < n; ++i) path.push_back(cycle[(s + i) % n]);
    }
    return path;
}

} // namespace ddsfc

#endif // DDSFC_CYCLE_HPP
