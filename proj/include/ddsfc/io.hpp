#ifndef DDSFC_IO_HPP
#define DDSFC_IO_HPP

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ddsfc/eval.hpp"
#include "ddsfc/tree.hpp"

namespace ddsfc::io {

namespace fs = std::filesystem;
using nlohmann::json;

/// Shortest text that reads back to the same double.
inline std::string fmt(double v)
{
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

inline std::string read_text(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in) throw DataError("cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text(const fs::path& p, const std::string& text)
{
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw DataError("cannot write " + p.string());
    out << text;
    if (!out) throw DataError("write failed for " + p.string());
}

inline json read_json(const fs::path& p)
{
    const std::string text = read_text(p);
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw DataError("unparseable " + p.string() + ": " + e.what());
    }
}

namespace detail {

template <class T>
T byteswap_value(T v)
{
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
    std::memcpy(&v, b, sizeof(T));
    return v;
}

template <class T>
std::vector<double> decode(const std::string& bytes, bool little)
{
    if (bytes.size() % sizeof(T) != 0) throw DataError("raw file size is not a multiple of the sample size");
    std::vector<double> out(bytes.size() / sizeof(T));
    const bool swap = little != (std::endian::native == std::endian::little);
    for (std::size_t i = 0; i < out.size(); ++i) {
        T v;
        std::memcpy(&v, bytes.data() + i * sizeof(T), sizeof(T));
        out[i] = static_cast<double>(swap ? byteswap_value(v) : v);
    }
    return out;
}

template <class T>
std::string encode(const std::vector<double>& values)
{
    std::string bytes(values.size() * sizeof(T), '\0');
    const bool swap = std::endian::native != std::endian::little;
    for (std::size_t i = 0; i < values.size(); ++i) {
        T v = static_cast<T>(values[i]);
        if (swap) v = byteswap_value(v);
        std::memcpy(bytes.data() + i * sizeof(T), &v, sizeof(T));
    }
    return bytes;
}

} // namespace detail

/// Reads a field descriptor (dims, dtype, order, endianness, data) and the
/// raw sample file it names, relative to the descriptor's directory.
inline ScalarField load_scalar_field(const fs::path& descriptor)
{
    const json d = read_json(descriptor);
    std::vector<int> dims;
    std::string dtype, order, endian, data;
    try {
        dims = d.at("dims").get<std::vector<int>>();
        dtype = d.value("dtype", std::string("f32"));
        order = d.value("order", std::string("row-major"));
        endian = d.value("endianness", std::string("little"));
        data = d.at("data").get<std::string>();
    } catch (const json::exception& e) {
        throw DataError("unparseable descriptor " + descriptor.string() + ": " + e.what());
    }
    if (order != "row-major") throw DataError("unsupported order '" + order + "'");
    if (endian != "little" && endian != "big") throw DataError("unsupported endianness '" + endian + "'");
    for (int n : dims)
        if (n < 1) throw DataError("dims entries must be >= 1");
    const Extent e = Extent::from_dims(dims);
    const std::string bytes = read_text(descriptor.parent_path() / data);
    const bool little = endian == "little";
    std::vector<double> values;
    if (dtype == "f32") values = detail::decode<float>(bytes, little);
    else if (dtype == "f64") values = detail::decode<double>(bytes, little);
    else if (dtype == "i32") values = detail::decode<std::int32_t>(bytes, little);
    else throw DataError("unsupported dtype '" + dtype + "' (f32, f64, i32)");
    return ScalarField(e, std::move(values));
}

/// Writes `values` as a little-endian raw file next to a descriptor.
inline void save_raw_field(const fs::path& descriptor, const Extent& e, const std::vector<double>& values,
                           const std::string& dtype = "f32")
{
    if (values.size() != e.size()) throw DataError("size mismatch writing " + descriptor.string());
    const std::string raw_name = descriptor.stem().string() + ".raw";
    std::string bytes;
    if (dtype == "f32") bytes = detail::encode<float>(values);
    else if (dtype == "f64") bytes = detail::encode<double>(values);
    else if (dtype == "i32") bytes = detail::encode<std::int32_t>(values);
    else throw UsageError("unsupported dtype '" + dtype + "'");
    write_text(descriptor.parent_path() / raw_name, bytes);
    json d = {{"dims", e.dims()}, {"dtype", dtype}, {"order", "row-major"}, {"endianness", "little"}, {"data", raw_name}};
    write_text(descriptor, d.dump(2) + "\n");
}

inline void save_scalar_field(const fs::path& descriptor, const ScalarField& f, const std::string& dtype = "f32")
{
    save_raw_field(descriptor, f.extent(), f.values(), dtype);
}

// ---------------------------------------------------------------------------
// Curve files

struct CurveHeader {
    Extent dims;
    std::string method;
    std::string alpha = "na";
};

inline std::string curve_text(const Curve& c, const std::string& method, const std::string& alpha)
{
    std::string out = "# dims=" + c.domain().str() + " method=" + method + " alpha=" + alpha + "\n";
    out.reserve(out.size() + c.size() * 16);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto& s = c[i];
        out += std::to_string(i) + ' ' + std::to_string(s.coord[0]) + ' ' + std::to_string(s.coord[1]) + ' ' +
               std::to_string(s.coord[2]) + ' ' + std::to_string(s.level) + '\n';
    }
    return out;
}

inline void write_curve(const fs::path& p, const Curve& c, const std::string& method, const std::string& alpha)
{
    write_text(p, curve_text(c, method, alpha));
}

inline Extent parse_dims(const std::string& s)
{
    std::vector<int> dims;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, 'x')) {
        try {
            dims.push_back(std::stoi(part));
        } catch (const std::exception&) {
            throw DataError("bad dims '" + s + "'");
        }
    }
    return Extent::from_dims(dims);
}

/// Reads a curve file. Curves written by the multiscale method are flagged
/// as multiscale.
inline Curve read_curve(const fs::path& p, CurveHeader* header = nullptr)
{
    std::istringstream in(read_text(p));
    std::string line;
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0) throw DataError("missing curve header in " + p.string());
    CurveHeader h;
    std::istringstream hs(line.substr(2));
    std::string kv;
    bool have_dims = false;
    while (hs >> kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) continue;
        const std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
        if (k == "dims") {
            h.dims = parse_dims(v);
            have_dims = true;
        } else if (k == "method") {
            h.method = v;
        } else if (k == "alpha") {
            h.alpha = v;
        }
    }
    if (!have_dims) throw DataError("curve header lacks dims in " + p.string());
    std::vector<Step> steps;
    std::size_t expect = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::size_t rank;
        Step s;
        if (!(ls >> rank >> s.coord[0] >> s.coord[1] >> s.coord[2] >> s.level)) throw DataError("bad curve line: " + line);
        if (rank != expect++) throw DataError("curve ranks out of order in " + p.string());
        steps.push_back(s);
    }
    if (header) *header = h;
    return Curve(h.dims, std::move(steps), h.method == "oursms");
}

// ---------------------------------------------------------------------------
// Tree files

inline std::string tree_text(const MultiscaleTree& t)
{
    std::string out = "# dims=" + t.domain().str() + " coarsest=" + std::to_string(t.coarsest_level()) +
                      "\n# id parent level x0 y0 z0 x1 y1 z1 value is_leaf\n";
    for (const auto& n : t.nodes()) {
        out += std::to_string(n.id) + ' ' + std::to_string(n.parent) + ' ' + std::to_string(n.level);
        for (int a = 0; a < 3; ++a) out += ' ' + std::to_string(n.box.lo[a]);
        for (int a = 0; a < 3; ++a) out += ' ' + std::to_string(n.box.hi[a]);
        out += ' ' + fmt(n.value) + ' ' + (n.is_leaf() ? "1" : "0") + '\n';
    }
    return out;
}

inline void write_tree(const fs::path& p, const MultiscaleTree& t) { write_text(p, tree_text(t)); }

/// Reads a tree file; upper box corners are exclusive, 2D trees use z0=0 and
/// z1=1. Parents must precede their children.
inline MultiscaleTree read_tree(const fs::path& p)
{
    std::istringstream in(read_text(p));
    std::string line;
    Extent dims;
    bool have_dims = false;
    int coarsest = 0;
    std::vector<TreeNode> nodes;
    std::vector<int> roots;
    std::vector<int> leaf_flags;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream hs(line.substr(1));
            std::string kv;
            while (hs >> kv) {
                if (kv.rfind("dims=", 0) == 0) {
                    dims = parse_dims(kv.substr(5));
                    have_dims = true;
                } else if (kv.rfind("coarsest=", 0) == 0) {
                    coarsest = std::stoi(kv.substr(9));
                }
            }
            continue;
        }
        std::istringstream ls(line);
        TreeNode n;
        int leaf = 0;
        if (!(ls >> n.id >> n.parent >> n.level >> n.box.lo[0] >> n.box.lo[1] >> n.box.lo[2] >> n.box.hi[0] >> n.box.hi[1] >>
              n.box.hi[2] >> n.value >> leaf))
            throw DataError("bad tree line: " + line);
        if (n.id != static_cast<int>(nodes.size())) throw DataError("tree ids must be 0..n-1 in order");
        if (n.level < 1) throw DataError("tree levels start at 1");
        const int s = 1 << (n.level - 1);
        for (int a = 0; a < 3; ++a) n.cell[a] = n.box.lo[a] / s;
        if (n.parent < 0) {
            roots.push_back(n.id);
            coarsest = std::max(coarsest, n.level);
        } else {
            if (n.parent >= n.id) throw DataError("tree parent must precede child at node " + std::to_string(n.id));
            nodes[static_cast<std::size_t>(n.parent)].children.push_back(n.id);
        }
        leaf_flags.push_back(leaf);
        nodes.push_back(n);
    }
    if (!have_dims) throw DataError("tree header lacks dims in " + p.string());
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if ((leaf_flags[i] != 0) != nodes[i].is_leaf()) throw DataError("is_leaf flag disagrees with children at node " + std::to_string(i));
    MultiscaleTree t(dims, coarsest, std::move(nodes), std::move(roots));
    t.validate();
    return t;
}

// ---------------------------------------------------------------------------
// Linearized values and reports

inline std::string values_csv(const LinearizedSeries& s)
{
    std::string out = s.has_radial ? "rank,u,t\n" : "rank,u\n";
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        out += std::to_string(i) + ',' + fmt(s.values[i]);
        if (s.has_radial) out += ',' + fmt(s.radial[i]);
        out += '\n';
    }
    return out;
}

/// Reads the u column (and t when present) of a values.csv file.
inline LinearizedSeries read_values_csv(const fs::path& p)
{
    std::istringstream in(read_text(p));
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty values file " + p.string());
    LinearizedSeries s;
    s.has_radial = line.find(",t") != std::string::npos;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::string rank, u, t;
        std::getline(ls, rank, ',');
        std::getline(ls, u, ',');
        s.values.push_back(std::stod(u));
        if (s.has_radial) {
            std::getline(ls, t, ',');
            s.radial.push_back(std::stod(t));
        }
    }
    return s;
}

} // namespace ddsfc::io

#endif // DDSFC_IO_HPP
