#ifndef DDSFC_REGULAR2D_HPP
#define DDSFC_REGULAR2D_HPP

#include <array>
#include <vector>

#include "ddsfc/dual_graph.hpp"

namespace ddsfc {

inline constexpr double kDefaultAlpha = 0.1;
inline constexpr std::array<int, 2> kDefaultBlock2d{8, 8};

/// Value term N(C_i, C_j) for circuits given in circuit coordinates.
inline double value_weight_2d(const ScalarField& field, const Coord& ci, const Coord& cj)
{
    if (field.rank() != 2) throw DataError("value_weight_2d needs a 2D field");
    const auto d = build_circuit_dual_graph(field.extent(), {1, 1, 1});
    if (!d.dual.contains(ci) || !d.dual.contains(cj)) throw DataError("circuit outside grid");
    return unit_value_weight(d, field.values(), d.index(ci), d.index(cj));
}

/// Circuit ring in counter-clockwise order starting at its minimum corner.
inline std::array<std::size_t, 4> circuit_ring(const CircuitDualGraph& d, std::size_t unit)
{
    return {d.vertex(unit, {0, 0, 0}), d.vertex(unit, {1, 0, 0}), d.vertex(unit, {1, 1, 0}), d.vertex(unit, {0, 1, 0})};
}

/// Cover-and-merge: every tree edge replaces the two facing circuit edges
/// with two bridges. Returns the cycle starting at (0,0).
inline std::vector<Coord> merge_cycle_2d(const CircuitDualGraph& d, const SpanningTree& mst, std::span<const double> values)
{
    if (d.grid.rank != 2) throw DataError("merge_cycle_2d needs a 2D dual graph");
    if (mst.order.size() != d.size()) throw DataError("spanning tree does not cover the dual graph");
    CycleBuilder cycles(d.grid.size());
    cycles.add_ring(circuit_ring(d, mst.root));
    for (const auto& e : mst.edges) {
        const auto ring = circuit_ring(d, e.child);
        const auto layers = detail::unit_layers(d, e.parent, e.child);
        if (!associate_cycles(cycles, ring, layers.facing, values))
            throw DataError("facing circuit edge missing while merging");
    }
    return cycle_coords(cycles, d.grid);
}

inline std::vector<Coord> merge_cycle_2d(const CircuitDualGraph& d, const SpanningTree& mst)
{
    const std::vector<double> zeros(d.grid.size(), 0.0);
    return merge_cycle_2d(d, mst, zeros);
}

/// Data-driven space-filling curve on an even-sized 2D grid.
inline Curve dd_sfc_2d(const ScalarField& field, double alpha = kDefaultAlpha, std::array<int, 2> block = kDefaultBlock2d)
{
    if (field.rank() != 2) throw DataError("dd_sfc_2d needs a 2D field");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw UsageError("alpha must lie in [0,1]");
    const ScalarField norm = normalize_values(field);
    const auto dual = build_circuit_dual_graph(grid_graph_from_field(norm), block);
    const auto mst = prim_mst(dual, norm, alpha, {0, 0, 0});
    // Association choices weigh value changes like the rest of the data term.
    std::vector<double> merge_values(norm.values());
    for (auto& v : merge_values) v *= 1.0 - alpha;
    const auto cycle = merge_cycle_2d(dual, mst, merge_values);
    return Curve::from_coords(field.extent(), cut_cycle_to_path(cycle, {0, 0, 0}, norm, 1.0 - alpha));
}

} // namespace ddsfc

#endif // DDSFC_REGULAR2D_HPP
