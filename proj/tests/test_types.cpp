#include <gtest/gtest.h>

#include "ddsfc/field.hpp"
#include "ddsfc/types.hpp"

using namespace ddsfc;

TEST(Extent, IndexAndCoordRoundTrip)
{
    for (Extent e : {Extent(3, 5), Extent(4, 2, 3)}) {
        for (std::size_t i = 0; i < e.size(); ++i) EXPECT_EQ(e.index(e.coord(i)), i);
        EXPECT_EQ(e.coord(1), (Coord{1, 0, 0}));
    }
    EXPECT_EQ(Extent(4, 2, 3).index({0, 0, 1}), 8u);
}

TEST(Extent, FromDimsRejectsWrongRank)
{
    EXPECT_EQ(Extent::from_dims({4, 6}), Extent(4, 6));
    EXPECT_EQ(Extent::from_dims({2, 3, 4}).str(), "2x3x4");
    EXPECT_THROW(Extent::from_dims({4}), DataError);
    EXPECT_THROW(Extent::from_dims({1, 2, 3, 4}), DataError);
}

TEST(Faces, AxisAndSide)
{
    EXPECT_EQ(face_axis(Face::YMax), 1);
    EXPECT_TRUE(face_is_max(Face::ZMax));
    EXPECT_FALSE(face_is_max(Face::XMin));
    EXPECT_EQ(make_face(2, false), Face::ZMin);
    EXPECT_EQ(faces_for_rank(2).size(), 4u);
    EXPECT_EQ(faces_for_rank(3).size(), 6u);
}

TEST(Curve, HamiltonianChecks)
{
    const Extent e(2, 2);
    EXPECT_TRUE(is_hamiltonian_on_grid(Curve::from_coords(e, {{0, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, 0, 0}})));
    // Diagonal jump: permutation but not adjacent.
    const Curve jump = Curve::from_coords(e, {{0, 0, 0}, {1, 1, 0}, {0, 1, 0}, {1, 0, 0}});
    EXPECT_TRUE(is_permutation_of_grid(jump));
    EXPECT_FALSE(is_hamiltonian_on_grid(jump));
    const Curve dup = Curve::from_coords(e, {{0, 0, 0}, {0, 1, 0}, {0, 0, 0}, {1, 0, 0}});
    EXPECT_FALSE(is_permutation_of_grid(dup));
    EXPECT_FALSE(dup.has_unique_steps());
    EXPECT_FALSE(is_hamiltonian_on_grid(Curve::from_coords(e, {{0, 0, 0}, {0, 1, 0}})));
}

TEST(Curve, RankOf)
{
    const Curve c = Curve::from_coords(Extent(2, 2), {{0, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, 0, 0}});
    EXPECT_EQ(c.rank_of({1, 1, 0}), 2u);
    EXPECT_FALSE(c.rank_of({5, 5, 0}).has_value());
}

TEST(ScalarField, SizeMismatchAndRange)
{
    EXPECT_THROW(ScalarField(Extent(2, 2), {1, 2, 3}), DataError);
    const ScalarField f(Extent(2, 2), {3, -1, 4, 1});
    EXPECT_EQ(f.value_range(), (std::pair<double, double>{-1, 4}));
    EXPECT_EQ(f.at({0, 1, 0}), 4);
}

TEST(ScalarField, NormalizeMapsToUnitInterval)
{
    const auto n = normalize_values(ScalarField(Extent(2, 2), {2, 4, 6, 10}));
    EXPECT_EQ(n.values(), (std::vector<double>{0.0, 0.25, 0.5, 1.0}));
    const auto c = normalize_values(ScalarField::filled(Extent(2, 2), 7.0));
    EXPECT_EQ(c.values(), (std::vector<double>(4, 0.0)));
    EXPECT_THROW(normalize_values(ScalarField(Extent(2, 1), {1.0, std::nan("")})), DataError);
}

TEST(ScalarField, PadToPowerOfTwoCube)
{
    const ScalarField f(Extent(3, 2), {1, 2, 3, 4, 5, 6});
    const auto p = pad_to_pow2_cube(f);
    EXPECT_EQ(p.extent(), Extent(4, 4));
    EXPECT_EQ(p.at({2, 1, 0}), 6);
    EXPECT_EQ(p.at({3, 3, 0}), 0);
    const ScalarField g = ScalarField::filled(Extent(4, 4, 4), 1.0);
    EXPECT_EQ(pad_to_pow2_cube(g).extent(), g.extent());
    EXPECT_EQ(pad_to_pow2_cube(ScalarField::filled(Extent(5, 2, 3), 1.0)).extent(), Extent(8, 8, 8));
}
