#ifndef DDSFC_MST_HPP
#define DDSFC_MST_HPP

#include <cstddef>
#include <limits>
#include <queue>
#include <tuple>
#include <vector>

#include "ddsfc/types.hpp"

namespace ddsfc {

/// Graph with a weight per arc. Weights may differ per direction: the arc
/// u->v carries the cost of attaching v when u is already in the tree.
struct WeightedGraph {
    struct Arc {
        std::size_t to;
        double weight;
    };

    std::vector<std::vector<Arc>> arcs;
    /// Tie-break key per node; smaller wins.
    std::vector<std::size_t> tie_rank;

    explicit WeightedGraph(std::size_t n = 0) : arcs(n), tie_rank(n)
    {
        for (std::size_t i = 0; i < n; ++i) tie_rank[i] = i;
    }

    std::size_t size() const { return arcs.size(); }

    void add_edge(std::size_t a, std::size_t b, double w_ab, double w_ba)
    {
        arcs[a].push_back({b, w_ab});
        arcs[b].push_back({a, w_ba});
    }
    void add_edge(std::size_t a, std::size_t b, double w) { add_edge(a, b, w, w); }
};

struct TreeEdge {
    std::size_t parent;
    std::size_t child;
    double weight;
};

/// Result of Prim growth: edges in insertion order (each child appears once).
struct SpanningTree {
    std::size_t root = 0;
    std::vector<TreeEdge> edges;
    std::vector<std::size_t> order;     // nodes in insertion order, root first
    std::vector<std::ptrdiff_t> parent; // -1 for the root

    double total_weight() const
    {
        double s = 0.0;
        for (const auto& e : edges) s += e.weight;
        return s;
    }
};

/// Prim's algorithm from `seed`. At each step the frontier arc of minimum
/// weight is added; ties go to the smaller tie_rank of the new node, then of
/// the tree-side node. With symmetric weights this is a minimum spanning tree.
inline SpanningTree prim_mst(const WeightedGraph& g, std::size_t seed)
{
    const std::size_t n = g.size();
    if (seed >= n) throw DataError("seed node out of range");
    // (weight, rank(new), rank(from), new, from)
    using Entry = std::tuple<double, std::size_t, std::size_t, std::size_t, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;

    SpanningTree t;
    t.root = seed;
    t.parent.assign(n, -1);
    std::vector<char> in_tree(n, 0);

    auto absorb = [&](std::size_t u) {
        in_tree[u] = 1;
        t.order.push_back(u);
        for (const auto& arc : g.arcs[u])
            if (!in_tree[arc.to]) frontier.emplace(arc.weight, g.tie_rank[arc.to], g.tie_rank[u], arc.to, u);
    };

    absorb(seed);
    while (!frontier.empty()) {
        auto [w, r_new, r_from, v, u] = frontier.top();
        frontier.pop();
        if (in_tree[v]) continue;
        t.parent[v] = static_cast<std::ptrdiff_t>(u);
        t.edges.push_back({u, v, w});
        absorb(v);
    }
    if (t.order.size() != n) throw DataError("dual graph is disconnected");
    return t;
}

} // namespace ddsfc

#endif // DDSFC_MST_HPP
