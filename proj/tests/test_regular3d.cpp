#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"

using namespace ddsfc;

TEST(CubeConfigs, SixDistinctHamiltonianCycles)
{
    const auto& cfgs = cube_cycle_configs();
    std::set<std::vector<std::pair<int, int>>> distinct;
    for (const auto& c : cfgs) {
        std::set<int> verts(c.ring.begin(), c.ring.end());
        EXPECT_EQ(verts.size(), 8u);
        for (std::size_t i = 0; i < 8; ++i) {
            const int diff = c.ring[i] ^ c.ring[(i + 1) % 8];
            EXPECT_TRUE(diff == 1 || diff == 2 || diff == 4);
        }
        distinct.insert(c.edges());
    }
    EXPECT_EQ(distinct.size(), 6u);
}

TEST(AssignConfigs, SeededAndInRange)
{
    const auto d = build_circuit_dual_graph(Extent(8, 8, 8), {4, 4, 4});
    const auto f = normalize_values(synthetic::sphere3d(8));
    const auto t = prim_mst(d, f, 0.1, {0, 0, 0});
    const auto a = assign_cycle_configs(t, 3);
    EXPECT_EQ(a, assign_cycle_configs(t, 3));
    EXPECT_NE(a, assign_cycle_configs(t, 4));
    for (int c : a) EXPECT_TRUE(c >= 0 && c < 6);
}

TEST(DdSfc3d, TwoCubedIsAUnitCycleCut)
{
    const auto c = dd_sfc_3d(ScalarField(Extent(2, 2, 2), {0, 1, 2, 3, 4, 5, 6, 7}));
    EXPECT_EQ(c.size(), 8u);
    EXPECT_TRUE(is_hamiltonian_on_grid(c));
}

TEST(DdSfc3d, HamiltonianOnRandomFields)
{
    std::mt19937_64 rng(21);
    for (int it = 0; it < 30; ++it) {
        const Extent e(2 * (1 + static_cast<int>(rng() % 4)), 2 * (1 + static_cast<int>(rng() % 4)), 2 * (1 + static_cast<int>(rng() % 4)));
        const double alpha = static_cast<double>(rng() % 11) / 10.0;
        Merge3dStats st;
        const auto c = dd_sfc_3d(oracle::random_field(e, rng), alpha, {2, 3, 4}, rng(), &st);
        EXPECT_TRUE(is_hamiltonian_on_grid(c)) << e.str();
        EXPECT_EQ(st.parallel_rule + st.endpoint_rule + 1, e.size() / 8);
    }
}

TEST(DdSfc3d, AlphaEndpoints)
{
    std::mt19937_64 rng(9);
    const auto f = oracle::random_field(Extent(8, 6, 4), rng);
    auto v = f.values();
    std::shuffle(v.begin(), v.end(), rng);
    EXPECT_EQ(dd_sfc_3d(f, 1.0, {2, 2, 2}), dd_sfc_3d(ScalarField(f.extent(), v), 1.0, {2, 2, 2}));
    EXPECT_EQ(dd_sfc_3d(f, 0.0, {2, 2, 2}), dd_sfc_3d(f, 0.0, {3, 1, 2}));
}

TEST(DdSfc3d, SeedDeterminism)
{
    const auto f = synthetic::sphere3d(8);
    EXPECT_EQ(dd_sfc_3d(f, 0.1, {4, 4, 4}, 42), dd_sfc_3d(f, 0.1, {4, 4, 4}, 42));
}

TEST(DdSfc3d, RejectsBadInput)
{
    EXPECT_THROW(dd_sfc_3d(ScalarField::filled(Extent(4, 4, 3), 0.0)), DataError);
    EXPECT_THROW(dd_sfc_3d(ScalarField::filled(Extent(4, 4), 0.0)), DataError);
    EXPECT_THROW(dd_sfc_3d(ScalarField::filled(Extent(4, 4, 4), 0.0), -0.5), UsageError);
}
