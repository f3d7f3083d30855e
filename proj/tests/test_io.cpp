#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace ddsfc;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / ("ddsfc_io_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST(FieldIo, RoundTripPerDtype)
{
    const auto dir = scratch("dtypes");
    const ScalarField f(Extent(3, 2, 2), {0, 1.5, -2, 3, 4, 5, 6, 7, 8, 9, 10, 11});
    for (std::string dtype : {"f32", "f64", "i32"}) {
        const auto desc = dir / (dtype + ".json");
        io::save_scalar_field(desc, f, dtype);
        const auto g = io::load_scalar_field(desc);
        EXPECT_EQ(g.extent(), f.extent());
        if (dtype == "i32") EXPECT_EQ(g.at({1, 0, 0}), 1.0);
        else EXPECT_EQ(g.values(), f.values());
    }
}

TEST(FieldIo, BigEndianRawFile)
{
    const auto dir = scratch("bigendian");
    const unsigned char bytes[] = {0x3f, 0x80, 0, 0, 0x40, 0, 0, 0, 0x40, 0x40, 0, 0, 0x40, 0x80, 0, 0};
    io::write_text(dir / "f.raw", std::string(reinterpret_cast<const char*>(bytes), sizeof bytes));
    io::write_text(dir / "f.json", R"({"dims":[2,2],"dtype":"f32","order":"row-major","endianness":"big","data":"f.raw"})");
    EXPECT_EQ(io::load_scalar_field(dir / "f.json").values(), (std::vector<double>{1, 2, 3, 4}));
}

TEST(FieldIo, DescriptorErrors)
{
    const auto dir = scratch("errors");
    io::write_text(dir / "f.raw", std::string(12, '\0'));
    io::write_text(dir / "short.json", R"({"dims":[2,2],"dtype":"f32","data":"f.raw"})");
    EXPECT_THROW(io::load_scalar_field(dir / "short.json"), DataError);
    io::write_text(dir / "dtype.json", R"({"dims":[3],"dtype":"u8","data":"f.raw"})");
    EXPECT_THROW(io::load_scalar_field(dir / "dtype.json"), DataError);
    io::write_text(dir / "bad.json", "{dims");
    EXPECT_THROW(io::load_scalar_field(dir / "bad.json"), DataError);
    io::write_text(dir / "order.json", R"({"dims":[3,1],"order":"column-major","data":"f.raw"})");
    EXPECT_THROW(io::load_scalar_field(dir / "order.json"), DataError);
    EXPECT_THROW(io::load_scalar_field(dir / "missing.json"), DataError);
}

TEST(CurveIo, RoundTrip)
{
    const auto dir = scratch("curve");
    const auto c = hilbert_curve(Extent(4, 4));
    io::write_curve(dir / "c.txt", c, "hilbert", "na");
    io::CurveHeader h;
    const auto back = io::read_curve(dir / "c.txt", &h);
    EXPECT_EQ(back, c);
    EXPECT_EQ(h.method, "hilbert");
    EXPECT_EQ(h.dims, Extent(4, 4));
    const auto text = io::read_text(dir / "c.txt");
    EXPECT_EQ(text.substr(0, text.find('\n')), "# dims=4x4 method=hilbert alpha=na");
}

TEST(CurveIo, MalformedFiles)
{
    const auto dir = scratch("badcurve");
    io::write_text(dir / "a.txt", "0 0 0 0 1\n");
    EXPECT_THROW(io::read_curve(dir / "a.txt"), DataError);
    io::write_text(dir / "b.txt", "# dims=2x2 method=x\n0 0 0 0 1\n2 1 0 0 1\n");
    EXPECT_THROW(io::read_curve(dir / "b.txt"), DataError);
    io::write_text(dir / "c.txt", "# dims=2x2 method=x\n0 0 zero 0 1\n");
    EXPECT_THROW(io::read_curve(dir / "c.txt"), DataError);
    EXPECT_THROW(io::parse_dims("4xq"), DataError);
}

TEST(TreeIo, RoundTrip)
{
    const auto dir = scratch("tree");
    std::mt19937_64 rng(1);
    const auto p = build_pyramid(oracle::patchy_field(Extent(9, 6, 5), rng), 3);
    const auto t = build_multiscale_tree(p, 0.01);
    io::write_tree(dir / "t.txt", t);
    const auto back = io::read_tree(dir / "t.txt");
    EXPECT_EQ(io::tree_text(back), io::tree_text(t));
    EXPECT_EQ(sfc_multiscale(p, back), sfc_multiscale(p, t));
}

TEST(TreeIo, RejectsBrokenTrees)
{
    const auto dir = scratch("badtree");
    io::write_text(dir / "a.txt", "# dims=2x2 coarsest=2\n0 -1 2 0 0 0 2 2 1 0.5 0\n1 0 1 0 0 0 1 1 1 0.5 1\n");
    EXPECT_THROW(io::read_tree(dir / "a.txt"), DataError); // children do not tile the parent
    io::write_text(dir / "b.txt", "# dims=2x2 coarsest=1\n0 1 1 0 0 0 1 1 1 0.5 1\n");
    EXPECT_THROW(io::read_tree(dir / "b.txt"), DataError);
    io::write_text(dir / "c.txt", "0 -1 1 0 0 0 1 1 1 0.5 1\n");
    EXPECT_THROW(io::read_tree(dir / "c.txt"), DataError);
}

TEST(ValuesIo, RoundTrip)
{
    const auto dir = scratch("values");
    LinearizedSeries s;
    s.values = {0.1, 0.2, 1.0 / 3.0};
    s.radial = {0, 1, std::sqrt(2.0)};
    io::write_text(dir / "v.csv", io::values_csv(s));
    const auto back = io::read_values_csv(dir / "v.csv");
    EXPECT_EQ(back.values, s.values);
    EXPECT_EQ(back.radial, s.radial);
    s.has_radial = false;
    EXPECT_EQ(io::values_csv(s).substr(0, 7), "rank,u\n");
}
