#ifndef DDSFC_SERVE_HPP
#define DDSFC_SERVE_HPP

#include <httplib.h>

#include <optional>
#include <sstream>
#include <string>

#include "ddsfc/io.hpp"
#include "ddsfc/multiscale.hpp"

namespace ddsfc::serve {

using nlohmann::json;

/// Status code plus JSON body. Handlers are pure functions of the run
/// directory and the query, so they can be tested without a socket.
struct Response {
    int status = 200;
    json body;
};

inline Response error_response(int status, const std::string& message) { return {status, json{{"error", message}}}; }

inline std::optional<Response> missing(const io::fs::path& p)
{
    if (io::fs::exists(p)) return std::nullopt;
    return error_response(404, "missing artifact " + p.filename().string());
}

/// Runs `f`, mapping library errors to 400/422 responses.
template <class F>
Response guarded(F&& f)
{
    try {
        return f();
    } catch (const UsageError& e) {
        return error_response(400, e.what());
    } catch (const Error& e) {
        return error_response(422, e.what());
    }
}

/// GET /api/meta: dims, method, alpha, levels and which optional artifacts exist.
inline Response meta(const io::fs::path& dir)
{
    const auto manifest = dir / "manifest.json";
    const auto curve = dir / "curve.txt";
    if (auto r = missing(curve)) return *r;
    return guarded([&] {
        io::CurveHeader h;
        io::read_curve(curve, &h);
        json m{{"dims", h.dims.dims()}, {"method", h.method}, {"alpha", nullptr}, {"levels", 1}};
        if (h.alpha != "na") m["alpha"] = std::stod(h.alpha);
        if (io::fs::exists(manifest)) {
            const auto man = io::read_json(manifest);
            if (man.contains("levels")) m["levels"] = man["levels"];
            if (man.contains("inputs")) m["members"] = man["inputs"].size();
        }
        m["has_bands"] = io::fs::exists(dir / "bands.csv");
        m["has_field"] = io::fs::exists(dir / "field.json");
        m["multiscale"] = h.method == "oursms";
        return Response{200, m};
    });
}

/// GET /api/curve: steps in rank order. Each step carries its coordinate,
/// level, and the half-open box of finest cells it covers.
inline Response curve(const io::fs::path& dir)
{
    const auto p = dir / "curve.txt";
    if (auto r = missing(p)) return *r;
    return guarded([&] {
        const Curve c = io::read_curve(p);
        const int rank = c.domain().rank;
        json steps = json::array();
        for (const auto& s : c.steps()) {
            const Box b = step_box(c.domain(), s);
            json coord = json::array(), lo = json::array(), hi = json::array();
            for (int a = 0; a < rank; ++a) {
                coord.push_back(s.coord[a]);
                lo.push_back(b.lo[a]);
                hi.push_back(b.hi[a]);
            }
            steps.push_back({{"coord", coord}, {"level", s.level}, {"lo", lo}, {"hi", hi}});
        }
        return Response{200, json{{"dims", c.domain().dims()}, {"multiscale", c.multiscale()}, {"length", c.size()}, {"steps", steps}}};
    });
}

inline json read_bands(const io::fs::path& p)
{
    std::istringstream in(io::read_text(p));
    std::string line;
    std::getline(in, line);
    json b{{"min", json::array()}, {"q25", json::array()}, {"median", json::array()}, {"q75", json::array()}, {"max", json::array()}};
    const char* keys[] = {"min", "q25", "median", "q75", "max"};
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::string cell;
        std::getline(ls, cell, ',');
        for (const char* k : keys) {
            if (!std::getline(ls, cell, ',')) throw DataError("short row in " + p.filename().string());
            b[k].push_back(std::stod(cell));
        }
    }
    return b;
}

/// GET /api/values: u series, t when defined, and quantile bands for ensembles.
inline Response values(const io::fs::path& dir)
{
    const auto p = dir / "values.csv";
    if (auto r = missing(p)) return *r;
    return guarded([&] {
        const auto s = io::read_values_csv(p);
        json body{{"u", s.values}};
        if (s.has_radial) body["t"] = s.radial;
        if (io::fs::exists(dir / "bands.csv")) body["bands"] = read_bands(dir / "bands.csv");
        return Response{200, body};
    });
}

/// GET /api/slice?z=k: row-major values of one z slice of the field.
inline Response slice(const io::fs::path& dir, const std::optional<std::string>& z_param)
{
    const auto p = dir / "field.json";
    if (auto r = missing(p)) return *r;
    int z = 0;
    if (z_param) {
        try {
            std::size_t used = 0;
            z = std::stoi(*z_param, &used);
            if (used != z_param->size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            return error_response(400, "z must be an integer, got '" + *z_param + "'");
        }
    }
    return guarded([&] {
        const ScalarField f = io::load_scalar_field(p);
        const Extent& e = f.extent();
        if (e.rank == 2 && z != 0) return error_response(400, "2D dataset has one slice");
        if (z < 0 || z >= e.n[2]) return error_response(400, "z out of range [0," + std::to_string(e.n[2]) + ")");
        json v = json::array();
        for (int y = 0; y < e.n[1]; ++y)
            for (int x = 0; x < e.n[0]; ++x) v.push_back(f.at({x, y, z}));
        const auto [lo, hi] = f.value_range();
        return Response{200, json{{"z", z}, {"width", e.n[0]}, {"height", e.n[1]}, {"depth", e.n[2]}, {"min", lo}, {"max", hi}, {"values", v}}};
    });
}

inline void send(httplib::Response& res, const Response& r)
{
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
}

/// Registers the read-only API on `server`, and mounts `static_dir` at /
/// when it is non-empty.
inline void register_routes(httplib::Server& server, const io::fs::path& dir, const io::fs::path& static_dir = {})
{
    server.Get("/api/meta", [dir](const httplib::Request&, httplib::Response& res) { send(res, meta(dir)); });
    server.Get("/api/curve", [dir](const httplib::Request&, httplib::Response& res) { send(res, curve(dir)); });
    server.Get("/api/values", [dir](const httplib::Request&, httplib::Response& res) { send(res, values(dir)); });
    server.Get("/api/slice", [dir](const httplib::Request& req, httplib::Response& res) {
        std::optional<std::string> z;
        if (req.has_param("z")) z = req.get_param_value("z");
        send(res, slice(dir, z));
    });
    if (!static_dir.empty()) {
        if (!server.set_mount_point("/", static_dir.string())) throw UsageError("static dir " + static_dir.string() + " not found");
    }
}

/// Binds `port` (0 picks a free one) and returns the bound port.
inline int bind(httplib::Server& server, const std::string& host, int port)
{
    if (port < 0 || port > 65535) throw UsageError("port must lie in [0,65535]");
    // httplib's default SO_REUSEPORT would let a second server share a busy port.
    server.set_socket_options([](socket_t sock) {
        int yes = 1;
        setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
    });
    const int bound = port == 0 ? server.bind_to_any_port(host) : (server.bind_to_port(host, port) ? port : -1);
    if (bound < 0) throw UsageError("cannot bind " + host + ":" + std::to_string(port) + " (port busy?)");
    return bound;
}

} // namespace ddsfc::serve

#endif // DDSFC_SERVE_HPP
