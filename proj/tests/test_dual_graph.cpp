#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"

using namespace ddsfc;

TEST(GridGraph, EdgeCounts)
{
    EXPECT_EQ(grid_graph(Extent(3, 4)).edge_count(), 2u * 4 + 3 * 3);
    EXPECT_EQ(grid_graph(Extent(2, 2, 2)).edge_count(), 12u);
}

TEST(DualGraph, ShapeAndEdges)
{
    const auto d = build_circuit_dual_graph(Extent(6, 4), {8, 8, 1});
    EXPECT_EQ(d.dual, Extent(3, 2));
    EXPECT_EQ(d.edges.size(), 7u);
    const auto d3 = build_circuit_dual_graph(Extent(4, 4, 4), {4, 4, 4});
    EXPECT_EQ(d3.size(), 8u);
    EXPECT_EQ(d3.edges.size(), 12u);
    auto nb = d3.neighbors[0];
    std::sort(nb.begin(), nb.end());
    EXPECT_EQ(nb, (std::vector<std::size_t>{1, 2, 4}));
}

TEST(DualGraph, RejectsOddOrTinyDims)
{
    EXPECT_THROW(build_circuit_dual_graph(Extent(5, 4), {8, 8, 1}), DataError);
    EXPECT_THROW(build_circuit_dual_graph(Extent(4, 4, 3), {4, 4, 4}), DataError);
    EXPECT_THROW(build_circuit_dual_graph(Extent(4, 4), {0, 8, 1}), UsageError);
}

TEST(ValueWeight, HandComputedCircuitPair)
{
    // Rows y=0: 0 1 3 7, y=1: 2 5 4 9. Growing (0,0) -> (1,0):
    // bridges |1-3|+|5-4|, new side edges |3-7|+|4-9|, far edge |7-9|,
    // minus the removed facing edges |3-4| and |1-5|.
    const ScalarField f(Extent(4, 2), {0, 1, 3, 7, 2, 5, 4, 9});
    EXPECT_DOUBLE_EQ(value_weight_2d(f, {0, 0, 0}, {1, 0, 0}), 2 + 1 + 4 + 5 + 2 - 1 - 4);
    // Reverse direction: bridges 2+1, side edges |1-0|+|5-2|, far |0-2|,
    // minus |1-5| and |3-4|.
    EXPECT_DOUBLE_EQ(value_weight_2d(f, {1, 0, 0}, {0, 0, 0}), 2 + 1 + 1 + 3 + 2 - 4 - 1);
    EXPECT_THROW(value_weight_2d(f, {0, 0, 0}, {3, 0, 0}), DataError);
}

TEST(ValueWeight, ConstantFieldIsZero)
{
    const auto f = ScalarField::filled(Extent(4, 4), 0.5);
    EXPECT_EQ(value_weight_2d(f, {0, 0, 0}, {0, 1, 0}), 0.0);
    const auto g = ScalarField::filled(Extent(4, 2, 2), 0.5);
    EXPECT_EQ(value_weight_3d(g, {0, 0, 0}, {1, 0, 0}), 0.0);
}

TEST(PositionWeight, HandValues)
{
    // 4x4 circuits in one block: center (2,2), half the block diagonal sqrt(32)/2.
    const auto d = build_circuit_dual_graph(Extent(8, 8), {4, 4, 1});
    EXPECT_DOUBLE_EQ(position_weight({0, 0, 0}, d), 1.0);
    EXPECT_DOUBLE_EQ(position_weight({2, 2, 0}, d), 0.0);
    EXPECT_DOUBLE_EQ(position_weight({3, 3, 0}, d), std::sqrt(2.0) / (0.5 * std::sqrt(32.0)));
    EXPECT_THROW(position_weight({4, 0, 0}, d), DataError);
}

TEST(PositionWeight, CubeHandValues)
{
    const auto d = build_circuit_dual_graph(Extent(8, 8, 8), {4, 4, 4});
    EXPECT_DOUBLE_EQ(position_weight_3d({1, 1, 1}, d), 0.5);
    EXPECT_DOUBLE_EQ(position_weight_3d({0, 0, 0}, d), 1.0);
    EXPECT_DOUBLE_EQ(position_weight_3d({2, 2, 2}, d), 0.0);
}

TEST(PositionWeight, StaysInUnitInterval)
{
    for (auto block : {std::array<int, 3>{1, 1, 1}, std::array<int, 3>{3, 2, 5}, std::array<int, 3>{4, 4, 4}}) {
        const auto d = build_circuit_dual_graph(Extent(12, 10, 8), block);
        for (std::size_t i = 0; i < d.size(); ++i) {
            const double w = position_weight(d.unit(i), d);
            EXPECT_GE(w, 0.0);
            EXPECT_LE(w, 1.0);
        }
    }
}

TEST(CombinedWeight, BlendsTerms)
{
    EXPECT_DOUBLE_EQ(combined_weight(2.0, 1.0, 0.25), 0.75 * 2.0 + 0.25 * 1.0);
    EXPECT_EQ(combined_weight(2.0, 1.0, 0.0), 2.0);
    EXPECT_EQ(combined_weight(2.0, 1.0, 1.0), 1.0);
    EXPECT_THROW(combined_weight(1, 1, 1.5), UsageError);
    EXPECT_THROW(combined_weight(1, 1, -0.1), UsageError);
}

TEST(DualWeightedGraph, ArcsMatchTermsPerDirection)
{
    std::mt19937_64 rng(2);
    const auto f = normalize_values(oracle::random_field(Extent(6, 4), rng));
    const auto d = build_circuit_dual_graph(f.extent(), {2, 2, 1});
    const double alpha = 0.4;
    const auto g = dual_weighted_graph(d, f, alpha);
    for (std::size_t a = 0; a < g.size(); ++a)
        for (const auto& arc : g.arcs[a]) {
            const double n = value_weight_2d(f, d.unit(a), d.unit(arc.to));
            EXPECT_DOUBLE_EQ(arc.weight, (1 - alpha) * n + alpha * position_weight(d.unit(arc.to), d));
        }
}
