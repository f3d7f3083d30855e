#ifndef DDSFC_DUAL_GRAPH_HPP
#define DDSFC_DUAL_GRAPH_HPP

#include <array>
#include <cmath>
#include <vector>

#include "ddsfc/cycle.hpp"
#include "ddsfc/grid_graph.hpp"
#include "ddsfc/mst.hpp"

namespace ddsfc {

/// Dual graph of unit cells: 2x2 circuits in 2D, 2x2x2 cubes in 3D. Nodes
/// are indexed row-major over `dual`; edges join face-adjacent units.
struct CircuitDualGraph {
    struct Edge {
        std::size_t a; // lower unit
        std::size_t b; // a + e_axis
        int axis;
    };

    Extent grid;                    // vertex grid
    Extent dual;                    // units per axis
    std::array<int, 3> block_size{8, 8, 1};
    std::vector<std::array<double, 3>> block_centers; // per unit, unit coordinates
    std::vector<Edge> edges;
    std::vector<std::vector<std::size_t>> neighbors; // lexicographic order

    std::size_t size() const { return dual.size(); }
    Coord unit(std::size_t i) const { return dual.coord(i); }
    std::size_t index(const Coord& c) const { return dual.index(c); }

    /// Lexicographic (x, y, z) rank of a unit; used for tie-breaking.
    std::size_t lex_rank(std::size_t i) const
    {
        const Coord c = unit(i);
        return (static_cast<std::size_t>(c[0]) * static_cast<std::size_t>(dual.n[1]) + static_cast<std::size_t>(c[1])) *
                   static_cast<std::size_t>(dual.n[2]) +
               static_cast<std::size_t>(c[2]);
    }

    /// Global vertex index of a unit's corner (offsets in {0,1}).
    std::size_t vertex(std::size_t unit_index, const Coord& offset) const
    {
        const Coord u = unit(unit_index);
        return grid.index({2 * u[0] + offset[0], 2 * u[1] + offset[1], 2 * u[2] + offset[2]});
    }
};

inline CircuitDualGraph build_circuit_dual_graph(const Extent& grid, std::array<int, 3> block_size)
{
    for (int a = 0; a < grid.rank; ++a)
        if (grid.n[a] < 2 || grid.n[a] % 2 != 0)
            throw DataError("even dims required, got " + grid.str());
    for (int a = 0; a < grid.rank; ++a)
        if (block_size[static_cast<std::size_t>(a)] < 1) throw UsageError("block size entries must be >= 1");
    if (grid.rank == 2) block_size[2] = 1;

    CircuitDualGraph d;
    d.grid = grid;
    d.dual = grid;
    for (int a = 0; a < grid.rank; ++a) d.dual.n[a] = grid.n[a] / 2;
    d.block_size = block_size;

    const std::size_t n = d.dual.size();
    d.block_centers.resize(n);
    d.neighbors.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Coord c = d.dual.coord(i);
        for (int a = 0; a < 3; ++a) {
            const int b = block_size[static_cast<std::size_t>(a)];
            const int first = (c[a] / b) * b;
            const int last = std::min(first + b, d.dual.n[a]) - 1;
            d.block_centers[i][static_cast<std::size_t>(a)] = first + 0.5 * (last - first + 1);
        }
        for (const auto& o : neighbor_offsets(grid.rank)) {
            const Coord nb = c + o;
            if (!d.dual.contains(nb)) continue;
            const std::size_t j = d.dual.index(nb);
            d.neighbors[i].push_back(j);
            const int axis = o[0] != 0 ? 0 : (o[1] != 0 ? 1 : 2);
            if (o[axis] > 0) d.edges.push_back({i, j, axis});
        }
    }
    return d;
}

inline CircuitDualGraph build_circuit_dual_graph(const GridGraph& graph, std::array<int, 2> block_size)
{
    return build_circuit_dual_graph(graph.extent, {block_size[0], block_size[1], 1});
}

inline CircuitDualGraph build_circuit_dual_graph(const GridGraph& graph, std::array<int, 3> block_size)
{
    return build_circuit_dual_graph(graph.extent, block_size);
}

/// Distance of a unit position to a block center divided by half the block
/// diagonal.
inline double normalized_center_distance(const std::array<double, 3>& pos, const std::array<double, 3>& center,
                                         const std::array<int, 3>& block_size, int rank)
{
    double d2 = 0.0, diag2 = 0.0;
    for (int a = 0; a < rank; ++a) {
        const auto i = static_cast<std::size_t>(a);
        d2 += (pos[i] - center[i]) * (pos[i] - center[i]);
        diag2 += static_cast<double>(block_size[i]) * static_cast<double>(block_size[i]);
    }
    return std::sqrt(d2) / (0.5 * std::sqrt(diag2));
}

/// Positional term: distance from the unit to the center of its block,
/// normalized by half the block diagonal (so it lies in [0,1]).
inline double position_weight(const Coord& unit, const CircuitDualGraph& dual)
{
    if (!dual.dual.contains(unit)) throw DataError("unit " + to_string(unit) + " outside dual graph");
    const auto& center = dual.block_centers[dual.index(unit)];
    return normalized_center_distance({double(unit[0]), double(unit[1]), double(unit[2])}, center, dual.block_size,
                                      dual.grid.rank);
}

inline double combined_weight(double value_term, double position_term, double alpha)
{
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw UsageError("alpha must lie in [0,1]");
    return (1.0 - alpha) * value_term + alpha * position_term;
}

namespace detail {

/// Face corners between adjacent units `from` and `to` (grid vertex ids):
/// inner on `from`'s facing layer, outer on `to`'s. Perpendicular axes are
/// taken in increasing order, corners in lexicographic order.
struct UnitLayers {
    std::vector<FacePair> facing;      // inner = from facing layer, outer = to facing layer
    std::vector<std::size_t> to_far;   // `to`'s far layer, same corner order
};

inline UnitLayers unit_layers(const CircuitDualGraph& d, std::size_t from, std::size_t to)
{
    const Coord cf = d.unit(from), ct = d.unit(to);
    int axis = -1;
    for (int a = 0; a < 3; ++a)
        if (cf[a] != ct[a]) axis = a;
    if (axis < 0 || manhattan(cf, ct) != 1)
        throw DataError("units " + to_string(cf) + " and " + to_string(ct) + " are not adjacent");
    const bool plus = ct[axis] > cf[axis];
    std::vector<int> perp;
    for (int a = 0; a < d.grid.rank; ++a)
        if (a != axis) perp.push_back(a);

    UnitLayers out;
    const int corners = 1 << perp.size();
    for (int k = 0; k < corners; ++k) {
        Coord off{0, 0, 0};
        // first perpendicular axis is the most significant bit
        for (std::size_t p = 0; p < perp.size(); ++p) off[perp[p]] = (k >> (perp.size() - 1 - p)) & 1;
        Coord inner = off, outer = off, far = off;
        inner[axis] = plus ? 1 : 0;
        outer[axis] = plus ? 0 : 1;
        far[axis] = plus ? 1 : 0;
        out.facing.push_back({d.vertex(from, inner), d.vertex(to, outer)});
        out.to_far.push_back(d.vertex(to, far));
    }
    return out;
}

/// Mean |difference| over the square edges of a layer (the single edge in 2D).
inline double layer_term(std::span<const std::size_t> corners, std::span<const double> s)
{
    double sum = 0.0;
    const auto edges = face_edges(corners.size());
    for (auto [k, l] : edges) sum += std::abs(s[corners[static_cast<std::size_t>(k)]] - s[corners[static_cast<std::size_t>(l)]]);
    return sum / static_cast<double>(edges.size());
}

} // namespace detail

/// Value term for growing the tree from unit `from` into unit `to`: the
/// increase in cycle cost when `to`'s unit cycle is merged.
///   + |bridges across the shared face|     (u)
///   + |edges of `to` along the growth axis| (w)
///   + layer term of `to`'s far face         (c)
///   - layer term of `to`'s facing face      (b)
///   - layer term of `from`'s facing face    (a)
inline double unit_value_weight(const CircuitDualGraph& d, std::span<const double> s, std::size_t from, std::size_t to)
{
    const auto layers = detail::unit_layers(d, from, to);
    const std::size_t m = layers.facing.size();
    std::vector<std::size_t> inner(m), outer(m);
    double sum = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        inner[k] = layers.facing[k].inner;
        outer[k] = layers.facing[k].outer;
        sum += std::abs(s[inner[k]] - s[outer[k]]);
        sum += std::abs(s[outer[k]] - s[layers.to_far[k]]);
    }
    sum += detail::layer_term(layers.to_far, s);
    sum -= detail::layer_term(outer, s);
    sum -= detail::layer_term(inner, s);
    return sum;
}

/// Directed weighted dual graph W(from -> to) = (1-alpha) N + alpha R(to).
inline WeightedGraph dual_weighted_graph(const CircuitDualGraph& d, const ScalarField& normalized, double alpha)
{
    if (normalized.extent() != d.grid) throw DataError("field extent does not match dual graph");
    WeightedGraph g(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) g.tie_rank[i] = d.lex_rank(i);
    std::vector<double> pos(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) pos[i] = position_weight(d.unit(i), d);
    const auto& s = normalized.values();
    for (const auto& e : d.edges) {
        const double w_ab = combined_weight(unit_value_weight(d, s, e.a, e.b), pos[e.b], alpha);
        const double w_ba = combined_weight(unit_value_weight(d, s, e.b, e.a), pos[e.a], alpha);
        g.add_edge(e.a, e.b, w_ab, w_ba);
    }
    // Arcs in lexicographic neighbor order keep the frontier deterministic.
    for (auto& arcs : g.arcs)
        std::sort(arcs.begin(), arcs.end(), [&](const auto& x, const auto& y) { return g.tie_rank[x.to] < g.tie_rank[y.to]; });
    return g;
}

/// Prim growth over the dual graph from `seed_unit`.
inline SpanningTree prim_mst(const CircuitDualGraph& d, const ScalarField& normalized, double alpha, const Coord& seed_unit)
{
    if (!d.dual.contains(seed_unit)) throw DataError("seed unit " + to_string(seed_unit) + " outside dual graph");
    return prim_mst(dual_weighted_graph(d, normalized, alpha), d.index(seed_unit));
}

/// Cycle vertices (grid coordinates) starting at grid vertex 0.
inline std::vector<Coord> cycle_coords(const CycleBuilder& cycles, const Extent& grid)
{
    std::vector<Coord> out;
    for (std::size_t v : cycles.walk(0)) out.push_back(grid.coord(v));
    return out;
}

} // namespace ddsfc

#endif // DDSFC_DUAL_GRAPH_HPP
