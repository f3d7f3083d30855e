#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace ddsfc;

TEST(CycleAssociation, TwoCircuitsMergeIntoOneCycle)
{
    const auto d = build_circuit_dual_graph(Extent(4, 2), {1, 1, 1});
    const std::vector<double> values(8, 0.0);
    CycleBuilder cycles(8);
    cycles.add_ring(circuit_ring(d, 0));
    const auto layers = detail::unit_layers(d, 0, 1);
    const auto rule = associate_cycles(cycles, circuit_ring(d, 1), layers.facing, values);
    ASSERT_TRUE(rule.has_value());
    EXPECT_EQ(*rule, AssociationRule::ParallelEdges);
    const auto walk = cycles.walk(0);
    ASSERT_EQ(walk.size(), 8u);
    std::vector<char> seen(8, 0);
    for (std::size_t i = 0; i < walk.size(); ++i) {
        EXPECT_FALSE(seen[walk[i]]);
        seen[walk[i]] = 1;
        EXPECT_TRUE(grid_adjacent(d.grid.coord(walk[i]), d.grid.coord(walk[(i + 1) % 8])));
    }
}

TEST(CycleAssociation, MissingFacingEdgeLeavesCyclesUntouched)
{
    const auto d = build_circuit_dual_graph(Extent(6, 2), {1, 1, 1});
    const std::vector<double> values(12, 0.0);
    CycleBuilder cycles(12);
    cycles.add_ring(circuit_ring(d, 0));
    // Circuit 2 does not touch circuit 0, so the inner "face" edge is absent.
    const auto layers = detail::unit_layers(d, 1, 2);
    EXPECT_FALSE(associate_cycles(cycles, circuit_ring(d, 2), layers.facing, values).has_value());
    EXPECT_EQ(cycles.walk(0).size(), 4u);
    EXPECT_FALSE(cycles.contains(d.vertex(2, {0, 0, 0})));
}

TEST(CutCycle, RemovesTheLargerIncidentEdge)
{
    const std::vector<Coord> cycle{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
    const ScalarField f(Extent(2, 2), {0.0, 1.0, 0.1, 0.5});
    const auto p = cut_cycle_to_path(cycle, {0, 0, 0}, f);
    EXPECT_EQ(p, (std::vector<Coord>{{0, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, 0, 0}}));
    // Ties keep the cycle orientation (the predecessor edge is removed).
    const auto q = cut_cycle_to_path(cycle, {0, 0, 0}, f, 0.0);
    EXPECT_EQ(q, cycle);
    EXPECT_THROW(cut_cycle_to_path(cycle, {5, 5, 0}, f), DataError);
}

TEST(DdSfc2d, TwoByTwoGivesFourSteps)
{
    const auto c = dd_sfc_2d(ScalarField(Extent(2, 2), {0, 1, 2, 3}));
    EXPECT_EQ(c.size(), 4u);
    EXPECT_TRUE(is_hamiltonian_on_grid(c));
    EXPECT_EQ(c[0].coord, (Coord{0, 0, 0}));
}

TEST(DdSfc2d, HamiltonianOnRandomFields)
{
    std::mt19937_64 rng(11);
    for (int it = 0; it < 40; ++it) {
        const Extent e(2 * (1 + static_cast<int>(rng() % 10)), 2 * (1 + static_cast<int>(rng() % 10)));
        const double alpha = static_cast<double>(rng() % 11) / 10.0;
        const std::array<int, 2> block{1 + static_cast<int>(rng() % 8), 1 + static_cast<int>(rng() % 8)};
        const auto c = dd_sfc_2d(oracle::random_field(e, rng), alpha, block);
        EXPECT_TRUE(is_hamiltonian_on_grid(c)) << e.str() << " alpha " << alpha;
    }
}

TEST(DdSfc2d, RejectsBadInput)
{
    EXPECT_THROW(dd_sfc_2d(ScalarField::filled(Extent(3, 4), 0.0)), DataError);
    EXPECT_THROW(dd_sfc_2d(ScalarField::filled(Extent(4, 4), 0.0), 1.5), UsageError);
    EXPECT_THROW(dd_sfc_2d(ScalarField::filled(Extent(2, 2, 2), 0.0)), DataError);
}

TEST(DdSfc2d, TwoBlobBeatsBaselinesOnPathCost)
{
    const auto f = synthetic::two_blob(8);
    const double ours = oracle::curve_cost(dd_sfc_2d(f), f);
    EXPECT_LE(ours, oracle::curve_cost(scanline_curve(f.extent()), f));
    EXPECT_LE(ours, oracle::curve_cost(hilbert_curve(f.extent()), f));
}

TEST(DdSfc2d, AlphaOneIgnoresValues)
{
    std::mt19937_64 rng(5);
    const auto f = oracle::random_field(Extent(12, 8), rng);
    auto values = f.values();
    std::shuffle(values.begin(), values.end(), rng);
    const ScalarField g(f.extent(), values);
    EXPECT_EQ(dd_sfc_2d(f, 1.0, {4, 4}), dd_sfc_2d(g, 1.0, {4, 4}));
}

TEST(DdSfc2d, AlphaZeroIgnoresBlockSize)
{
    std::mt19937_64 rng(6);
    const auto f = oracle::random_field(Extent(12, 8), rng);
    EXPECT_EQ(dd_sfc_2d(f, 0.0, {2, 2}), dd_sfc_2d(f, 0.0, {5, 3}));
}

TEST(DdSfc2d, Deterministic)
{
    const auto f = synthetic::disks2d(32);
    EXPECT_EQ(dd_sfc_2d(f), dd_sfc_2d(f));
}

TEST(DdSfc2d, ScaleInvariantInValues)
{
    std::mt19937_64 rng(8);
    const auto f = oracle::random_field(Extent(10, 10), rng);
    std::vector<double> v = f.values();
    for (auto& x : v) x = 3.0 * x + 7.0;
    EXPECT_EQ(dd_sfc_2d(f).coords(), dd_sfc_2d(ScalarField(f.extent(), v)).coords());
}
