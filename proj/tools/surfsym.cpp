// Command-line driver: read one surface description, compute its Euclidean
// symmetry group, print a text or JSON report.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "surfsym/pipeline.hpp"

int main(int argc, char** argv) {
    CLI::App app{"surfsym: exact Euclidean symmetries of rational surfaces"};

    std::string input_path;
    std::string mode_str = "auto";
    std::string pn_str = "auto";
    int degree_bound = -1;
    int samples = -1;
    std::uint64_t seed = 1;
    bool json_out = false;
    bool verbose = false;

    app.add_option("file", input_path,
                   "surface description file ('-' reads standard input)")
        ->required();
    app.add_option("--mode", mode_str, "pipeline: auto, general or ruled")
        ->check(CLI::IsMember({"auto", "general", "ruled"}));
    app.add_option("--pn", pn_str, "PN route: auto, on or off")
        ->check(CLI::IsMember({"auto", "on", "off"}));
    app.add_option("--degree-bound", degree_bound,
                   "total-degree bound for reparametrization components");
    app.add_option("--samples", samples, "sampling budget for branch extraction");
    auto* seed_opt = app.add_option("--seed", seed, "seed for all randomized sampling");
    app.add_flag("--json", json_out, "emit the report as JSON");
    app.add_flag("--verbose", verbose, "log system degrees and candidate counts to stderr");

    CLI11_PARSE(app, argc, argv);

    std::string text;
    if (input_path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else {
        std::ifstream in(input_path);
        if (!in) {
            std::cerr << "error: cannot open '" << input_path << "'\n";
            return 1;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }

    try {
        surfsym::SurfaceFile file = surfsym::parse_surface(text);
        surfsym::RunOptions opts;
        bool mode_set = app.count("--mode") > 0;
        bool pn_set = app.count("--pn") > 0;
        opts.mode = mode_str == "auto" ? surfsym::PipelineMode::automatic
                    : mode_str == "general" ? surfsym::PipelineMode::general
                                            : surfsym::PipelineMode::ruled;
        opts.pn = pn_str == "auto" ? surfsym::PnMode::automatic
                  : pn_str == "on" ? surfsym::PnMode::on
                                   : surfsym::PnMode::off;
        if (degree_bound >= 0) opts.degree_bound = degree_bound;
        if (samples >= 0) opts.sample_budget = samples;
        opts.seed = seed;
        opts.verbose = verbose;
        opts = surfsym::merge_hints(opts, file, mode_set, pn_set, seed_opt->count() > 0);

        surfsym::SymmetryReport rep = surfsym::run(file, opts);
        if (json_out)
            std::cout << surfsym::to_json(rep).dump(2) << "\n";
        else
            std::cout << surfsym::render_text(rep);
        return 0;
    } catch (const surfsym::Error& e) {
        if (e.code() == surfsym::errc::parse_error) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
