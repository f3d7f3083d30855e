#ifndef DDSFC_GRID_GRAPH_HPP
#define DDSFC_GRID_GRAPH_HPP

#include <vector>

#include "ddsfc/field.hpp"

namespace ddsfc {

/// Vertices with neighbor lists and a per-vertex scale level.
/// On a regular grid all levels are 1 and vertex i is cell i (row-major).
struct GridGraph {
    Extent extent;
    std::vector<Coord> vertices;
    std::vector<std::vector<std::size_t>> adjacency;
    std::vector<int> levels;

    std::size_t edge_count() const
    {
        std::size_t deg = 0;
        for (const auto& nb : adjacency) deg += nb.size();
        return deg / 2;
    }
};

/// Offsets to the 4 (2D) or 6 (3D) face neighbors, ordered so that the
/// resulting neighbor coordinates are lexicographically increasing.
inline std::vector<Coord> neighbor_offsets(int rank)
{
    if (rank == 2) return {{-1, 0, 0}, {0, -1, 0}, {0, 1, 0}, {1, 0, 0}};
    return {{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0}};
}

/// 4-connected (2D) / 6-connected (3D) grid graph over the cells of an extent.
inline GridGraph grid_graph(const Extent& extent)
{
    GridGraph g;
    g.extent = extent;
    const std::size_t n = extent.size();
    g.vertices.reserve(n);
    g.adjacency.resize(n);
    g.levels.assign(n, 1);
    const auto offsets = neighbor_offsets(extent.rank);
    for (std::size_t i = 0; i < n; ++i) {
        const Coord c = extent.coord(i);
        g.vertices.push_back(c);
        for (const auto& o : offsets) {
            const Coord nb = c + o;
            if (extent.contains(nb)) g.adjacency[i].push_back(extent.index(nb));
        }
    }
    return g;
}

inline GridGraph grid_graph_from_field(const ScalarField& field) { return grid_graph(field.extent()); }

} // namespace ddsfc

#endif // DDSFC_GRID_GRAPH_HPP
