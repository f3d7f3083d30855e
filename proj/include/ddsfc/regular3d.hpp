#ifndef DDSFC_REGULAR3D_HPP
#define DDSFC_REGULAR3D_HPP

#include <array>
#include <cstdint>
#include <algorithm>
#include <deque>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "ddsfc/regular2d.hpp"

namespace ddsfc {

inline constexpr std::array<int, 3> kDefaultBlock3d{4, 4, 4};

/// Hamiltonian cycle of the unit cube. Vertex id bits: 1 = +x, 2 = +y, 4 = +z.
struct CubeCycleConfig {
    int id = 0;
    std::array<int, 8> ring{};

    std::vector<std::pair<int, int>> edges() const
    {
        std::vector<std::pair<int, int>> out;
        for (std::size_t i = 0; i < 8; ++i) {
            int a = ring[i], b = ring[(i + 1) % 8];
            out.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(out.begin(), out.end());
        return out;
    }
};

/// The six Hamiltonian cycles of the cube graph, found by enumeration and
/// ordered by their ring starting at vertex 0 (smaller second vertex first).
inline const std::array<CubeCycleConfig, 6>& cube_cycle_configs()
{
    static const std::array<CubeCycleConfig, 6> configs = [] {
        std::vector<std::array<int, 8>> rings;
        std::array<int, 8> path{};
        std::function<void(int, int)> dfs = [&](int depth, int mask) {
            if (depth == 8) {
                const int diff = path[7] ^ path[0];
                if ((diff & (diff - 1)) == 0 && path[1] < path[7]) rings.push_back(path);
                return;
            }
            for (int bit : {1, 2, 4}) {
                const int v = path[static_cast<std::size_t>(depth - 1)] ^ bit;
                if (mask & (1 << v)) continue;
                path[static_cast<std::size_t>(depth)] = v;
                dfs(depth + 1, mask | (1 << v));
            }
        };
        path[0] = 0;
        dfs(1, 1);
        std::sort(rings.begin(), rings.end());
        std::array<CubeCycleConfig, 6> out{};
        if (rings.size() != 6) throw std::logic_error("cube must have six Hamiltonian cycles");
        for (std::size_t i = 0; i < 6; ++i) out[i] = {static_cast<int>(i), rings[i]};
        return out;
    }();
    return configs;
}

/// Value term for 3D cubes given in cube coordinates.
inline double value_weight_3d(const ScalarField& field, const Coord& ci, const Coord& cj)
{
    if (field.rank() != 3) throw DataError("value_weight_3d needs a 3D field");
    const auto d = build_circuit_dual_graph(field.extent(), {1, 1, 1});
    if (!d.dual.contains(ci) || !d.dual.contains(cj)) throw DataError("cube outside grid");
    return unit_value_weight(d, field.values(), d.index(ci), d.index(cj));
}

inline double position_weight_3d(const Coord& cube, const CircuitDualGraph& dual) { return position_weight(cube, dual); }

/// One config id per dual node, drawn from a seeded 64-bit Mersenne Twister
/// in node order.
inline std::vector<int> assign_cycle_configs(const SpanningTree& mst, std::uint64_t rng_seed)
{
    std::mt19937_64 rng(rng_seed);
    std::vector<int> out(mst.parent.size());
    for (auto& c : out) c = static_cast<int>(rng() % 6);
    return out;
}

inline std::array<std::size_t, 8> cube_ring(const CircuitDualGraph& d, std::size_t unit, int config)
{
    const auto& cfg = cube_cycle_configs()[static_cast<std::size_t>(config)];
    std::array<std::size_t, 8> out{};
    for (std::size_t i = 0; i < 8; ++i) {
        const int v = cfg.ring[i];
        out[i] = d.vertex(unit, {v & 1, (v >> 1) & 1, (v >> 2) & 1});
    }
    return out;
}

/// Counters describing how the 3D merge went.
struct Merge3dStats {
    std::size_t parallel_rule = 0;
    std::size_t endpoint_rule = 0;
    std::size_t config_changes = 0;   // assigned config replaced to allow a merge
    std::size_t non_tree_merges = 0;  // merged through a neighbor other than the tree parent
    std::size_t deferred = 0;         // postponed to a later pass
};

/// Grows one Hamiltonian cycle by traversing the tree in insertion order and
/// associating each cube's unit cycle with its parent's. If no rule applies
/// with the assigned config, the other five configs are tried, then other
/// already-merged neighbors; a cube that still cannot merge is retried after
/// the rest of the pass. `configs` is updated to the configs actually used.
inline std::vector<Coord> merge_cycle_3d(const CircuitDualGraph& d, const SpanningTree& mst, std::vector<int>& configs,
                                         std::span<const double> values, Merge3dStats* stats = nullptr)
{
    if (d.grid.rank != 3) throw DataError("merge_cycle_3d needs a 3D dual graph");
    if (mst.order.size() != d.size()) throw DataError("spanning tree does not cover the dual graph");
    Merge3dStats local;
    Merge3dStats& st = stats ? *stats : local;

    CycleBuilder cycles(d.grid.size());
    std::vector<char> merged(d.size(), 0);
    cycles.add_ring(cube_ring(d, mst.root, configs[mst.root]));
    merged[mst.root] = 1;

    auto try_merge = [&](std::size_t unit) {
        std::vector<std::size_t> hosts;
        const auto parent = mst.parent[unit];
        if (parent >= 0 && merged[static_cast<std::size_t>(parent)]) hosts.push_back(static_cast<std::size_t>(parent));
        for (std::size_t nb : d.neighbors[unit])
            if (merged[nb] && static_cast<std::ptrdiff_t>(nb) != parent) hosts.push_back(nb);
        for (std::size_t h = 0; h < hosts.size(); ++h) {
            const auto layers = detail::unit_layers(d, hosts[h], unit);
            for (int k = 0; k < 6; ++k) {
                const int cfg = (configs[unit] + k) % 6;
                const auto ring = cube_ring(d, unit, cfg);
                const auto rule = associate_cycles(cycles, ring, layers.facing, values);
                if (!rule) continue;
                (*rule == AssociationRule::ParallelEdges ? st.parallel_rule : st.endpoint_rule)++;
                if (k != 0) ++st.config_changes;
                if (h != 0 || static_cast<std::ptrdiff_t>(hosts[0]) != parent) ++st.non_tree_merges;
                configs[unit] = cfg;
                merged[unit] = 1;
                return true;
            }
        }
        return false;
    };

    std::deque<std::size_t> pending(mst.order.begin() + 1, mst.order.end());
    while (!pending.empty()) {
        std::deque<std::size_t> retry;
        for (std::size_t unit : pending)
            if (!try_merge(unit)) retry.push_back(unit);
        if (retry.size() == pending.size()) throw DataError("no applicable cycle association for remaining cubes");
        st.deferred += retry.size();
        pending.swap(retry);
    }
    return cycle_coords(cycles, d.grid);
}

/// Data-driven space-filling curve on an even-sized 3D grid.
inline Curve dd_sfc_3d(const ScalarField& field, double alpha = kDefaultAlpha, std::array<int, 3> block = kDefaultBlock3d,
                       std::uint64_t rng_seed = 0, Merge3dStats* stats = nullptr)
{
    if (field.rank() != 3) throw DataError("dd_sfc_3d needs a 3D field");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw UsageError("alpha must lie in [0,1]");
    const ScalarField norm = normalize_values(field);
    const auto dual = build_circuit_dual_graph(grid_graph_from_field(norm), block);
    const auto mst = prim_mst(dual, norm, alpha, {0, 0, 0});
    auto configs = assign_cycle_configs(mst, rng_seed);
    // Association choices weigh value changes like the rest of the data term.
    std::vector<double> merge_values(norm.values());
    for (auto& v : merge_values) v *= 1.0 - alpha;
    const auto cycle = merge_cycle_3d(dual, mst, configs, merge_values, stats);
    return Curve::from_coords(field.extent(), cut_cycle_to_path(cycle, {0, 0, 0}, norm, 1.0 - alpha));
}

} // namespace ddsfc

#endif // DDSFC_REGULAR3D_HPP
