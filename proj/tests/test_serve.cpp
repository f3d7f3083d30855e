#include <gtest/gtest.h>

#include <thread>

#include "ddsfc/pipeline.hpp"
#include "ddsfc/serve.hpp"
#include "ddsfc/synthetic.hpp"

using namespace ddsfc;
namespace fs = std::filesystem;

namespace {

fs::path gen_run(const std::string& name, const ScalarField& f, Method m, int members = 1)
{
    const auto dir = fs::temp_directory_path() / ("ddsfc_serve_" + name);
    fs::remove_all(dir);
    GenRequest r;
    for (int k = 0; k < members; ++k) {
        const auto p = dir / ("in" + std::to_string(k) + ".json");
        std::vector<double> v = f.values();
        for (auto& x : v) x += 0.1 * k;
        io::save_scalar_field(p, ScalarField(f.extent(), v), "f64");
        r.inputs.push_back(p.string());
    }
    r.params.method = m;
    r.output_dir = (dir / "run").string();
    run_gen(r);
    return dir / "run";
}

} // namespace

TEST(ServeHandlers, Meta)
{
    const auto run = gen_run("meta", synthetic::disks2d(64), Method::Ours2d);
    const auto r = serve::meta(run);
    EXPECT_EQ(r.status, 200);
    EXPECT_EQ(r.body["dims"], (std::vector<int>{64, 64}));
    EXPECT_EQ(r.body["method"], "ours2d");
    EXPECT_EQ(r.body["alpha"], 0.1);
    EXPECT_EQ(r.body["levels"], 1);
}

TEST(ServeHandlers, CurveLengthEqualsCellCount)
{
    const auto run = gen_run("curve", synthetic::sphere3d(8), Method::Ours3d);
    const auto r = serve::curve(run);
    EXPECT_EQ(r.status, 200);
    EXPECT_EQ(r.body["steps"].size(), 512u);
    EXPECT_EQ(r.body["length"], 512u);
    EXPECT_EQ(r.body["steps"][0]["coord"], (std::vector<int>{0, 0, 0}));
    EXPECT_EQ(r.body["steps"][0]["hi"], (std::vector<int>{1, 1, 1}));
}

TEST(ServeHandlers, MultiscaleCurveCarriesBoxes)
{
    const auto run = gen_run("mscurve", synthetic::disks2d(16), Method::OursMs);
    const auto r = serve::curve(run);
    ASSERT_EQ(r.status, 200);
    EXPECT_TRUE(r.body["multiscale"].get<bool>());
    std::size_t cells = 0;
    for (const auto& s : r.body["steps"]) {
        const auto lo = s["lo"].get<std::vector<int>>(), hi = s["hi"].get<std::vector<int>>();
        cells += static_cast<std::size_t>((hi[0] - lo[0]) * (hi[1] - lo[1]));
    }
    EXPECT_EQ(cells, 256u);
    EXPECT_GT(serve::meta(run).body["levels"].get<int>(), 1);
}

TEST(ServeHandlers, ValuesWithAndWithoutBands)
{
    const auto single = gen_run("values", synthetic::disks2d(8), Method::Scanline);
    auto r = serve::values(single);
    EXPECT_EQ(r.body["u"].size(), 64u);
    EXPECT_EQ(r.body["t"].size(), 64u);
    EXPECT_FALSE(r.body.contains("bands"));
    const auto ens = gen_run("bands", synthetic::disks2d(8), Method::Scanline, 3);
    r = serve::values(ens);
    ASSERT_TRUE(r.body.contains("bands"));
    EXPECT_EQ(r.body["bands"]["median"].size(), 64u);
    EXPECT_LE(r.body["bands"]["min"][5].get<double>(), r.body["bands"]["max"][5].get<double>());
}

TEST(ServeHandlers, Slices)
{
    const auto run2 = gen_run("slice2", synthetic::disks2d(8), Method::Ours2d);
    auto r = serve::slice(run2, std::string("5"));
    EXPECT_EQ(r.status, 400);
    EXPECT_EQ(r.body["error"], "2D dataset has one slice");
    r = serve::slice(run2, std::nullopt);
    EXPECT_EQ(r.status, 200);
    EXPECT_EQ(r.body["values"].size(), 64u);
    EXPECT_EQ(serve::slice(run2, std::string("abc")).status, 400);

    const auto run3 = gen_run("slice3", synthetic::sphere3d(4), Method::Ours3d);
    r = serve::slice(run3, std::string("2"));
    EXPECT_EQ(r.status, 200);
    EXPECT_EQ(r.body["depth"], 4);
    const auto f = synthetic::sphere3d(4);
    EXPECT_EQ(r.body["values"][1 + 4 * 2].get<double>(), f.at({1, 2, 2}));
    EXPECT_EQ(serve::slice(run3, std::string("4")).status, 400);
}

TEST(ServeHandlers, MissingArtifactsAre404)
{
    const auto empty = fs::temp_directory_path() / "ddsfc_serve_empty";
    fs::remove_all(empty);
    fs::create_directories(empty);
    EXPECT_EQ(serve::meta(empty).status, 404);
    EXPECT_EQ(serve::curve(empty).status, 404);
    EXPECT_EQ(serve::values(empty).status, 404);
    EXPECT_EQ(serve::slice(empty, std::nullopt).status, 404);
}

TEST(ServeHttp, EndpointsOverASocket)
{
    const auto run = gen_run("http", synthetic::disks2d(16), Method::Ours2d);
    const auto assets = run.parent_path() / "static";
    io::write_text(assets / "index.html", "<html></html>");
    httplib::Server server;
    serve::register_routes(server, run, assets);
    const int port = serve::bind(server, "127.0.0.1", 0);
    std::thread t([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    httplib::Client client("127.0.0.1", port);
    auto meta = client.Get("/api/meta");
    ASSERT_TRUE(meta);
    EXPECT_EQ(meta->status, 200);
    EXPECT_EQ(meta->get_header_value("Content-Type"), "application/json");
    EXPECT_EQ(nlohmann::json::parse(meta->body)["dims"], (std::vector<int>{16, 16}));

    // Stateless: repeated GETs return identical bodies.
    auto c1 = client.Get("/api/curve");
    auto c2 = client.Get("/api/curve");
    ASSERT_TRUE(c1 && c2);
    EXPECT_EQ(c1->body, c2->body);
    EXPECT_EQ(nlohmann::json::parse(c1->body)["steps"].size(), 256u);

    auto slice = client.Get("/api/slice?z=5");
    ASSERT_TRUE(slice);
    EXPECT_EQ(slice->status, 400);
    EXPECT_EQ(nlohmann::json::parse(slice->body)["error"], "2D dataset has one slice");

    auto index = client.Get("/index.html");
    ASSERT_TRUE(index);
    EXPECT_EQ(index->status, 200);

    // A second server cannot take the same port.
    httplib::Server other;
    EXPECT_THROW(serve::bind(other, "127.0.0.1", port), UsageError);

    server.stop();
    t.join();
}

TEST(ServeHttp, MissingRunGives404OverHttp)
{
    const auto empty = fs::temp_directory_path() / "ddsfc_serve_nothing";
    fs::remove_all(empty);
    fs::create_directories(empty);
    httplib::Server server;
    serve::register_routes(server, empty);
    const int port = serve::bind(server, "127.0.0.1", 0);
    std::thread t([&] { server.listen_after_bind(); });
    server.wait_until_ready();
    httplib::Client client("127.0.0.1", port);
    auto r = client.Get("/api/values");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, 404);
    server.stop();
    t.join();
}
