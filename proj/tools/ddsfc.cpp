// ddsfc command-line tool: gen, eval, serve, synth.

#include <CLI11.hpp>

#include <csignal>
#include <iostream>
#include <string>
#include <vector>

#include "ddsfc/pipeline.hpp"
#include "ddsfc/serve.hpp"
#include "ddsfc/synthetic.hpp"

namespace {

using namespace ddsfc;

httplib::Server* g_server = nullptr;

void on_signal(int)
{
    if (g_server) g_server->stop();
}

/// "synthetic:<name>[:<side>]" or a field descriptor path.
Dataset load_dataset(const std::string& spec, std::uint64_t seed)
{
    const std::string prefix = "synthetic:";
    if (spec.rfind(prefix, 0) == 0) {
        std::string name = spec.substr(prefix.size());
        int side = 0;
        if (auto colon = name.find(':'); colon != std::string::npos) {
            try {
                side = std::stoi(name.substr(colon + 1));
            } catch (const std::exception&) {
                throw UsageError("bad side in dataset '" + spec + "'");
            }
            name = name.substr(0, colon);
        }
        if (side == 0) side = name == "disks2d" ? 64 : name == "two_blob" ? 8 : name == "sphere3d" ? 16 : 32;
        if (side < 2) throw UsageError("dataset side must be >= 2");
        return {name, synthetic::by_name(name, side, seed)};
    }
    return {io::fs::path(spec).stem().string(), io::load_scalar_field(spec)};
}

int run(int argc, char** argv)
{
    CLI::App app{"Data-driven space-filling curves for 2D/3D scalar fields"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a curve and its linearization");
    std::vector<std::string> inputs;
    std::string method = "ours2d", tree_path, output, from_manifest;
    GenParams params;
    gen->add_option("--input", inputs, "Field descriptor (repeat for an ensemble)");
    gen->add_option("--method", method, "Method: " + method_list())->capture_default_str();
    gen->add_option("--alpha", params.alpha, "Blend factor in [0,1]")->capture_default_str();
    gen->add_option("--block", params.block, "Block size for the position term")->delimiter(',');
    gen->add_option("--seed", params.seed, "Seed for 3D cycle configurations")->capture_default_str();
    gen->add_option("--tree", tree_path, "Tree file for oursms (default: auto-built)");
    gen->add_option("--levels", params.levels, "Pyramid levels for an auto-built tree (0 = max)")->capture_default_str();
    gen->add_option("--threshold", params.split_threshold, "Variance split threshold on normalized values")->capture_default_str();
    gen->add_option("--from-manifest", from_manifest, "Re-run with the parameters of a manifest");
    gen->add_option("--output", output, "Output directory")->required();

    // eval
    auto* eval = app.add_subcommand("eval", "Compare autocorrelation across methods and datasets");
    std::vector<std::string> datasets, methods;
    int max_lag = 32;
    GenParams eval_params;
    std::string eval_output;
    std::uint64_t data_seed = 5;
    eval->add_option("--datasets", datasets, "Descriptors or synthetic:<name>[:<side>]")->delimiter(',')->required();
    eval->add_option("--methods", methods, "Methods: " + method_list())->delimiter(',')->required();
    eval->add_option("--max-lag", max_lag, "Largest lag")->capture_default_str();
    eval->add_option("--alpha", eval_params.alpha, "Blend factor in [0,1]")->capture_default_str();
    eval->add_option("--seed", eval_params.seed, "Seed for 3D cycle configurations")->capture_default_str();
    eval->add_option("--data-seed", data_seed, "Seed for synthetic datasets")->capture_default_str();
    eval->add_option("--output", eval_output, "Report directory")->required();

    // serve
    auto* serve_cmd = app.add_subcommand("serve", "Serve a gen output directory over HTTP");
    std::string dir, host = "127.0.0.1", static_dir;
    int port = 8080;
    serve_cmd->add_option("--dir", dir, "Output directory from gen")->required();
    serve_cmd->add_option("--port", port, "Port (0 = any free)")->capture_default_str();
    serve_cmd->add_option("--host", host, "Bind address")->capture_default_str();
    serve_cmd->add_option("--static", static_dir, "Viewer assets mounted at /");

    // synth
    auto* synth = app.add_subcommand("synth", "Write a bundled synthetic dataset");
    std::string synth_name, synth_out, dtype = "f32";
    int side = 0;
    std::uint64_t synth_seed = 5;
    synth->add_option("--name", synth_name, "disks2d, sphere3d, two_blob or tangle3d")->required();
    synth->add_option("--side", side, "Side length (0 = dataset default)")->capture_default_str();
    synth->add_option("--seed", synth_seed, "Seed (disks2d)")->capture_default_str();
    synth->add_option("--dtype", dtype, "f32 or f64")->capture_default_str();
    synth->add_option("--output", synth_out, "Descriptor path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (gen->parsed()) {
        GenRequest req;
        if (!from_manifest.empty()) {
            if (!inputs.empty()) throw UsageError("--from-manifest replaces --input");
            req = request_from_manifest(from_manifest, output);
        } else {
            req.inputs = inputs;
            params.method = parse_method(method);
            req.params = params;
            req.tree_path = tree_path;
            req.output_dir = output;
        }
        const auto s = run_gen(req);
        std::cout << "wrote " << s.steps << " steps to " << output;
        if (s.tree_auto) std::cout << " (tree auto-built)";
        if (s.padded) std::cout << " (field zero-padded)";
        std::cout << '\n';
        return 0;
    }
    if (eval->parsed()) {
        std::erase(datasets, std::string{});
        if (datasets.empty()) throw UsageError("empty dataset list");
        std::vector<Method> ms;
        for (const auto& m : methods) ms.push_back(parse_method(m));
        std::vector<Dataset> ds;
        for (const auto& d : datasets) ds.push_back(load_dataset(d, data_seed));
        const Report rep = compare_methods(ds, ms, eval_params, max_lag);
        write_report(eval_output, rep);
        for (const auto& f : rep.failures) std::cerr << "failed: " << f << '\n';
        for (const auto& [key, r] : rep.mean) {
            const int last = std::min<int>(max_lag, static_cast<int>(r.size()) - 1);
            std::cout << key.first << ' ' << key.second << " mean r(1.." << last << ") = " << io::fmt(mean_over_lags(r, 1, last)) << '\n';
        }
        return 0;
    }
    if (serve_cmd->parsed()) {
        httplib::Server server;
        serve::register_routes(server, dir, static_dir);
        const int bound = serve::bind(server, host, port);
        g_server = &server;
        std::signal(SIGINT, on_signal);
        std::signal(SIGTERM, on_signal);
        std::cout << "serving " << dir << " on http://" << host << ':' << bound << '\n' << std::flush;
        server.listen_after_bind();
        return 0;
    }
    if (synth->parsed()) {
        const auto d = load_dataset("synthetic:" + synth_name + (side > 0 ? ":" + std::to_string(side) : ""), synth_seed);
        io::save_scalar_field(synth_out, d.field, dtype);
        std::cout << "wrote " << d.field.extent().str() << ' ' << synth_name << " to " << synth_out << '\n';
        return 0;
    }
    return 1;
}

} // namespace

int main(int argc, char** argv)
{
    try {
        return run(argc, argv);
    } catch (const ddsfc::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const ddsfc::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
