#ifndef DDSFC_PIPELINE_HPP
#define DDSFC_PIPELINE_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ddsfc/baselines.hpp"
#include "ddsfc/io.hpp"
#include "ddsfc/multiscale.hpp"

namespace ddsfc {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr double kDefaultSplitThreshold = 1e-3;

enum class Method { Ours2d, Ours3d, OursMs, Hilbert, Morton, Scanline };

inline const std::vector<std::pair<std::string, Method>>& method_table()
{
    static const std::vector<std::pair<std::string, Method>> t{{"ours2d", Method::Ours2d},   {"ours3d", Method::Ours3d},
                                                               {"oursms", Method::OursMs},   {"hilbert", Method::Hilbert},
                                                               {"morton", Method::Morton},   {"scanline", Method::Scanline}};
    return t;
}

inline std::string method_list()
{
    std::string s;
    for (const auto& [name, m] : method_table()) s += (s.empty() ? "" : ", ") + name;
    return s;
}

inline Method parse_method(const std::string& name)
{
    for (const auto& [n, m] : method_table())
        if (n == name) return m;
    throw UsageError("unknown method '" + name + "' (valid: " + method_list() + ")");
}

inline std::string method_name(Method m)
{
    for (const auto& [n, x] : method_table())
        if (x == m) return n;
    return "?";
}

inline bool uses_alpha(Method m) { return m == Method::Ours2d || m == Method::Ours3d || m == Method::OursMs; }

struct GenParams {
    Method method = Method::Ours2d;
    double alpha = kDefaultAlpha;
    std::vector<int> block; // empty = method default
    std::uint64_t seed = 0;
    int levels = 0; // multiscale pyramid levels, 0 = aligned maximum
    double split_threshold = kDefaultSplitThreshold; // variance on [0,1]-normalized values
};

inline void validate(const GenParams& p)
{
    if (!(p.alpha >= 0.0 && p.alpha <= 1.0)) throw UsageError("alpha must lie in [0,1]");
    for (int b : p.block)
        if (b < 1) throw UsageError("block entries must be >= 1");
    if (p.levels < 0) throw UsageError("levels must be >= 0");
    if (!(p.split_threshold >= 0.0)) throw UsageError("split threshold must be >= 0");
}

struct Generated {
    ScalarField field;  // field the curve runs over (zero-padded for Hilbert/Morton when needed)
    bool padded = false;
    Curve curve;
    std::optional<ValuePyramid> pyramid;
    std::optional<MultiscaleTree> tree;
    bool tree_auto = false;
};

/// Hilbert needs a power-of-two square/cube and Morton power-of-two dims;
/// other fields are zero-padded to the enclosing power-of-two cube.
inline bool needs_padding(Method m, const Extent& e)
{
    if (m != Method::Hilbert && m != Method::Morton) return false;
    for (int a = 0; a < e.rank; ++a) {
        if (!is_power_of_two(e.n[a])) return true;
        if (m == Method::Hilbert && e.n[a] != e.n[0]) return true;
    }
    return false;
}

inline std::array<int, 2> block2(const GenParams& p)
{
    if (p.block.empty()) return kDefaultBlock2d;
    if (p.block.size() != 2) throw UsageError("ours2d needs --block with 2 entries");
    return {p.block[0], p.block[1]};
}

inline std::array<int, 3> block3(const GenParams& p)
{
    if (p.block.empty()) return kDefaultBlock3d;
    if (p.block.size() != 3) throw UsageError("ours3d needs --block with 3 entries");
    return {p.block[0], p.block[1], p.block[2]};
}

inline MultiscaleOptions multiscale_options(const GenParams& p, int rank)
{
    MultiscaleOptions o;
    o.alpha = p.alpha;
    o.seed = p.seed;
    if (!p.block.empty()) {
        if (rank == 2) o.block2d = block2(p);
        else o.block3d = block3(p);
    }
    return o;
}

/// Runs one method over a field. For the multiscale method `tree` is used
/// when given; otherwise a tree is built with the parameters' threshold.
inline Generated generate(const ScalarField& input, const GenParams& p, const MultiscaleTree* tree = nullptr)
{
    validate(p);
    Generated g;
    g.field = needs_padding(p.method, input.extent()) ? pad_to_pow2_cube(input) : input;
    g.padded = g.field.extent() != input.extent();
    const Extent& e = g.field.extent();
    switch (p.method) {
    case Method::Ours2d:
        if (e.rank != 2) throw UsageError("ours2d needs a 2D field, got " + e.str());
        g.curve = dd_sfc_2d(g.field, p.alpha, block2(p));
        break;
    case Method::Ours3d:
        if (e.rank != 3) throw UsageError("ours3d needs a 3D field, got " + e.str());
        g.curve = dd_sfc_3d(g.field, p.alpha, block3(p), p.seed);
        break;
    case Method::OursMs: {
        if (tree) {
            if (tree->domain() != e) throw DataError("tree dims " + tree->domain().str() + " do not match field " + e.str());
            g.pyramid = build_pyramid(g.field, tree->coarsest_level());
            g.tree = *tree;
        } else {
            const int levels = p.levels > 0 ? p.levels : aligned_pyramid_levels(e);
            g.pyramid = build_pyramid(g.field, levels);
            const auto [lo, hi] = g.field.value_range();
            g.tree = build_multiscale_tree(*g.pyramid, p.split_threshold * (hi - lo) * (hi - lo));
            g.tree_auto = true;
        }
        g.curve = sfc_multiscale(*g.pyramid, *g.tree, multiscale_options(p, e.rank));
        break;
    }
    case Method::Hilbert:
        g.curve = hilbert_curve(e);
        break;
    case Method::Morton:
        g.curve = morton_curve(e);
        break;
    case Method::Scanline:
        g.curve = scanline_curve(e);
        break;
    }
    return g;
}

inline std::string alpha_text(const GenParams& p) { return uses_alpha(p.method) ? io::fmt(p.alpha) : "na"; }

// ---------------------------------------------------------------------------
// Ensembles

/// Index of the member whose mean value is the median (lower median on
/// even counts, ties to the smaller index).
inline std::size_t median_member(const std::vector<ScalarField>& members)
{
    if (members.empty()) throw DataError("empty ensemble");
    std::vector<std::pair<double, std::size_t>> m;
    for (std::size_t i = 0; i < members.size(); ++i) {
        double s = 0.0;
        for (double v : members[i].values()) s += v;
        m.emplace_back(s / static_cast<double>(members[i].size()), i);
    }
    std::sort(m.begin(), m.end());
    return m[(m.size() - 1) / 2].second;
}

struct QuantileBands {
    std::vector<double> min, q25, median, q75, max;
};

/// Linear-interpolated quantile of a sorted sample.
inline double quantile_sorted(const std::vector<double>& s, double q)
{
    const double pos = q * static_cast<double>(s.size() - 1);
    const auto i = static_cast<std::size_t>(pos);
    if (i + 1 >= s.size()) return s.back();
    return s[i] + (pos - static_cast<double>(i)) * (s[i + 1] - s[i]);
}

/// Per-position min/25%/50%/75%/max over the member series.
inline QuantileBands quantile_bands(const std::vector<std::vector<double>>& series)
{
    if (series.empty()) throw DataError("no series for quantile bands");
    const std::size_t n = series.front().size();
    for (const auto& s : series)
        if (s.size() != n) throw DataError("ensemble series differ in length");
    QuantileBands b;
    std::vector<double> col(series.size());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < series.size(); ++k) col[k] = series[k][i];
        std::sort(col.begin(), col.end());
        b.min.push_back(col.front());
        b.q25.push_back(quantile_sorted(col, 0.25));
        b.median.push_back(quantile_sorted(col, 0.5));
        b.q75.push_back(quantile_sorted(col, 0.75));
        b.max.push_back(col.back());
    }
    return b;
}

inline std::string bands_csv(const QuantileBands& b)
{
    std::string out = "rank,min,q25,median,q75,max\n";
    for (std::size_t i = 0; i < b.min.size(); ++i)
        out += std::to_string(i) + ',' + io::fmt(b.min[i]) + ',' + io::fmt(b.q25[i]) + ',' + io::fmt(b.median[i]) + ',' +
               io::fmt(b.q75[i]) + ',' + io::fmt(b.max[i]) + '\n';
    return out;
}

// ---------------------------------------------------------------------------
// gen

struct GenRequest {
    std::vector<std::string> inputs; // descriptor paths; several = ensemble
    GenParams params;
    std::string tree_path;           // oursms only; empty = build
    std::string output_dir;
};

struct GenSummary {
    std::size_t steps = 0;
    std::size_t median_member = 0;
    bool tree_auto = false;
    bool padded = false;
};

inline nlohmann::json manifest_json(const GenRequest& r, const Generated& g, std::size_t median)
{
    nlohmann::json m;
    m["tool"] = "ddsfc";
    m["version"] = kVersion;
    m["inputs"] = r.inputs;
    m["method"] = method_name(r.params.method);
    m["alpha"] = r.params.alpha;
    m["block"] = r.params.block;
    m["seed"] = r.params.seed;
    m["levels"] = g.pyramid ? g.pyramid->coarsest() : 1;
    m["split_threshold"] = r.params.split_threshold;
    m["tree"] = r.tree_path.empty() ? nlohmann::json("auto") : nlohmann::json(r.tree_path);
    m["tree_auto"] = g.tree_auto;
    m["dims"] = g.field.extent().dims();
    m["padded"] = g.padded;
    m["median_member"] = median;
    nlohmann::json out = {{"curve", "curve.txt"}, {"values", "values.csv"}, {"field", "field.json"}};
    if (g.tree) {
        out["tree"] = "tree.txt";
        out["reconstruction"] = "reconstruction.json";
    }
    if (r.inputs.size() > 1) out["bands"] = "bands.csv";
    m["outputs"] = out;
    return m;
}

/// Generates a curve and writes curve.txt, values.csv, field.json/.raw,
/// manifest.json, and for the multiscale method tree.txt plus the rank
/// reconstruction. Ensembles use the median member's curve for all members.
inline GenSummary run_gen(const GenRequest& r)
{
    if (r.inputs.empty()) throw UsageError("gen needs at least one --input");
    if (r.output_dir.empty()) throw UsageError("gen needs --output");
    if (!r.tree_path.empty() && r.params.method != Method::OursMs) throw UsageError("--tree only applies to oursms");
    validate(r.params);

    std::vector<ScalarField> members;
    for (const auto& in : r.inputs) members.push_back(io::load_scalar_field(in));
    for (const auto& m : members)
        if (m.extent() != members.front().extent()) throw DataError("ensemble members differ in dims");
    const std::size_t median = median_member(members);

    std::optional<MultiscaleTree> tree;
    if (!r.tree_path.empty()) tree = io::read_tree(r.tree_path);
    const Generated g = generate(members[median], r.params, tree ? &*tree : nullptr);

    const io::fs::path dir(r.output_dir);
    io::fs::create_directories(dir);
    const std::string method = method_name(r.params.method);
    io::write_curve(dir / "curve.txt", g.curve, method, alpha_text(r.params));
    io::save_scalar_field(dir / "field.json", g.field, "f64");
    io::write_text(dir / "values.csv", io::values_csv(linearize(g.field, g.curve, method)));
    if (members.size() > 1) {
        std::vector<std::vector<double>> series;
        for (const auto& m : members) {
            const ScalarField f = g.padded ? pad_to_pow2_cube(m) : m;
            series.push_back(linearize(f, g.curve).values);
        }
        io::write_text(dir / "bands.csv", bands_csv(quantile_bands(series)));
    }
    if (g.tree) {
        io::write_tree(dir / "tree.txt", *g.tree);
        const auto ranks = reconstruct_to_grid(g.curve, *g.tree);
        io::save_raw_field(dir / "reconstruction.json", g.field.extent(), std::vector<double>(ranks.begin(), ranks.end()), "i32");
    }
    io::write_text(dir / "manifest.json", manifest_json(r, g, median).dump(2) + "\n");
    return {g.curve.size(), median, g.tree_auto, g.padded};
}

/// Rebuilds a gen request from a manifest written by run_gen.
inline GenRequest request_from_manifest(const io::fs::path& manifest, const std::string& output_dir)
{
    const auto m = io::read_json(manifest);
    GenRequest r;
    try {
        r.inputs = m.at("inputs").get<std::vector<std::string>>();
        r.params.method = parse_method(m.at("method").get<std::string>());
        r.params.alpha = m.at("alpha").get<double>();
        r.params.block = m.at("block").get<std::vector<int>>();
        r.params.seed = m.at("seed").get<std::uint64_t>();
        r.params.split_threshold = m.at("split_threshold").get<double>();
        const auto tree = m.at("tree").get<std::string>();
        if (tree != "auto") r.tree_path = tree;
        if (m.at("tree_auto").get<bool>()) r.params.levels = m.at("levels").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw DataError("unparseable manifest " + manifest.string() + ": " + e.what());
    }
    r.output_dir = output_dir;
    return r;
}

// ---------------------------------------------------------------------------
// Method comparison

struct Dataset {
    std::string name;
    ScalarField field;
};

struct ReportRow {
    std::string method;
    std::string dataset;
    std::string metric; // "value" or "radial"
    std::size_t lag;
    double r;
};

struct Report {
    std::vector<ReportRow> rows;                                          // per dataset, then "mean" rows
    std::map<std::pair<std::string, std::string>, std::vector<double>> mean; // (method, metric) -> r(k)
    std::vector<std::string> failures;
};

/// Autocorrelation of u and t for every (dataset, method) pair, plus the
/// per-method mean over datasets. Failing pairs are recorded and skipped.
inline Report compare_methods(const std::vector<Dataset>& datasets, const std::vector<Method>& methods, const GenParams& base,
                              int max_lag)
{
    if (datasets.empty()) throw UsageError("no datasets to compare");
    if (methods.empty()) throw UsageError("no methods to compare");
    if (max_lag < 1) throw UsageError("max lag must be >= 1");
    Report rep;
    std::map<std::pair<std::string, std::string>, std::vector<std::vector<double>>> acc;
    for (Method m : methods) {
        for (const auto& ds : datasets) {
            try {
                GenParams p = base;
                p.method = m;
                const Generated g = generate(ds.field, p);
                const auto s = linearize(g.field, g.curve, method_name(m), ds.name);
                std::vector<std::pair<std::string, const std::vector<double>*>> metrics{{"value", &s.values}};
                if (s.has_radial) metrics.emplace_back("radial", &s.radial);
                std::vector<std::pair<std::string, std::vector<double>>> results;
                for (const auto& [metric, series] : metrics) results.emplace_back(metric, normalized_autocorrelation(*series, max_lag));
                for (const auto& [metric, r] : results) {
                    for (std::size_t k = 0; k < r.size(); ++k) rep.rows.push_back({method_name(m), ds.name, metric, k, r[k]});
                    acc[{method_name(m), metric}].push_back(r);
                }
            } catch (const Error& e) {
                rep.failures.push_back(method_name(m) + " on " + ds.name + ": " + e.what());
            }
        }
    }
    for (const auto& [key, curves] : acc) {
        std::vector<double> mean(curves.front().size(), 0.0);
        for (const auto& c : curves)
            for (std::size_t k = 0; k < mean.size(); ++k) mean[k] += c[k];
        for (auto& v : mean) v /= static_cast<double>(curves.size());
        rep.mean[key] = mean;
        for (std::size_t k = 0; k < mean.size(); ++k) rep.rows.push_back({key.first, "mean", key.second, k, mean[k]});
    }
    return rep;
}

inline std::string report_csv(const Report& rep)
{
    std::string out = "method,dataset,metric,lag,r\n";
    for (const auto& row : rep.rows)
        out += row.method + ',' + row.dataset + ',' + row.metric + ',' + std::to_string(row.lag) + ',' + io::fmt(row.r) + '\n';
    return out;
}

/// Line plot of the mean r(k) per method for one metric.
inline std::string report_svg(const Report& rep, const std::string& metric)
{
    const double w = 640, h = 400, ml = 50, mr = 120, mt = 30, mb = 40;
    static const char* colors[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02"};
    std::size_t max_lag = 1;
    double lo = 0.0, hi = 1.0;
    for (const auto& [key, r] : rep.mean) {
        if (key.second != metric) continue;
        max_lag = std::max(max_lag, r.size() - 1);
        for (double v : r) lo = std::min(lo, v), hi = std::max(hi, v);
    }
    auto px = [&](std::size_t k) { return ml + (w - ml - mr) * static_cast<double>(k) / static_cast<double>(max_lag); };
    auto py = [&](double v) { return mt + (h - mt - mb) * (hi - v) / (hi - lo); };
    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s += "<text x=\"" + io::fmt(ml) + "\" y=\"18\">" + metric + " autocorrelation</text>\n";
    s += "<line x1=\"" + io::fmt(ml) + "\" y1=\"" + io::fmt(h - mb) + "\" x2=\"" + io::fmt(w - mr) + "\" y2=\"" + io::fmt(h - mb) +
         "\" stroke=\"black\"/>\n";
    s += "<line x1=\"" + io::fmt(ml) + "\" y1=\"" + io::fmt(mt) + "\" x2=\"" + io::fmt(ml) + "\" y2=\"" + io::fmt(h - mb) +
         "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + io::fmt(w - mr) + "\" y=\"" + io::fmt(h - 10) + "\" text-anchor=\"end\">lag " + std::to_string(max_lag) + "</text>\n";
    s += "<text x=\"5\" y=\"" + io::fmt(py(hi) + 4) + "\">" + io::fmt(hi) + "</text>\n";
    s += "<text x=\"5\" y=\"" + io::fmt(py(lo) + 4) + "\">" + io::fmt(lo) + "</text>\n";
    std::size_t i = 0;
    for (const auto& [key, r] : rep.mean) {
        if (key.second != metric) continue;
        const char* c = colors[i % 6];
        s += "<polyline fill=\"none\" stroke=\"" + std::string(c) + "\" points=\"";
        for (std::size_t k = 0; k < r.size(); ++k) s += io::fmt(px(k)) + ',' + io::fmt(py(r[k])) + ' ';
        s += "\"/>\n";
        s += "<text x=\"" + io::fmt(w - mr + 8) + "\" y=\"" + io::fmt(mt + 16.0 * static_cast<double>(i)) + "\" fill=\"" + c + "\">" +
             key.first + "</text>\n";
        ++i;
    }
    s += "</svg>\n";
    return s;
}

/// Writes report.csv, value.svg and radial.svg into `dir`.
inline void write_report(const io::fs::path& dir, const Report& rep)
{
    io::write_text(dir / "report.csv", report_csv(rep));
    io::write_text(dir / "value.svg", report_svg(rep, "value"));
    io::write_text(dir / "radial.svg", report_svg(rep, "radial"));
}

} // namespace ddsfc

#endif // DDSFC_PIPELINE_HPP
