#include <iostream>
#include <map>
#include <stdexcept>

#include "CLI11.hpp"
#include "qsdome/run.hpp"

int main(int argc, char** argv) {
    qsdome::RunConfig cfg;
    CLI::App app{"qsdome: quasisymmetric dome surfaces over planar Jordan domains"};
    app.set_config("--config", "", "key = value file mirroring the flags");
    app.require_subcommand(1);

    const std::map<std::string, std::string> about{
        {"analyze-curve", "two-point and chord-arc constants, flatness profile"},
        {"level-scan", "classify inner level sets along an eps ladder"},
        {"build-surface", "lift the domain to a closed double-sheeted surface"},
        {"probe-llc", "linear local connectivity probes on the surface"},
        {"probe-regularity", "ball-area ratios area(B(x,r))/r^2 on the surface"},
        {"verify-cone-map", "Koebe bounds and dome-map distortion for a disk map"},
        {"necessity-check", "regularity vs LLC bound on the identity-gauge surface"}};
    for (const auto& name : qsdome::run_commands()) {
        auto* sub = app.add_subcommand(name, about.at(name));
        sub->add_option("--fixture", cfg.fixture, "fixture spec, e.g. circle, square:s=2, spike:depth=0.5,width=0.1");
        sub->add_option("--curve", cfg.curve_file, "curve file (x y lines or JSON [[x,y],...])")->check(CLI::ExistingFile);
        sub->add_option("--gauge", cfg.gauge, "identity, power:a, counterexample, staircase:[[d,h],...]");
        sub->add_option("--resolution", cfg.resolution, "distance grid cells across the bounding box");
        sub->add_option("--ladder", cfg.ladder, "geometric:N or list:e1,e2,...");
        sub->add_option("--K-max", cfg.K_max);
        sub->add_option("--c-max", cfg.c_max);
        sub->add_option("--map", cfg.map, "cone map, e.g. quadratic:0.3, moebius:0.5, a>b for compositions");
        sub->add_option("--radii", cfg.radii, "comma-separated probe radii");
        sub->add_option("--lambda-grid", cfg.lambda_grid, "comma-separated LLC lambda grid");
        sub->add_option("--centers", cfg.centers, "probe centers");
        sub->add_option("--mesh-format", cfg.mesh_format)->check(CLI::IsMember({"obj", "ply", "none"}));
        sub->add_option("--output", cfg.output_dir, "output directory (default $QSDOME_OUTPUT_DIR or qsdome-out)");
        sub->add_option("--seed", cfg.seed);
        sub->add_option("--threads", cfg.threads);
        sub->add_flag("--record-time", cfg.record_time, "store wall time in the report");
        sub->add_flag("!--no-svg", cfg.svg, "skip SVG artifacts");
        sub->callback([&cfg, name] { cfg.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        auto res = qsdome::run(cfg);
        std::cout << res.report_path << "\n";
        for (const auto& f : res.failed_assertions) std::cerr << "assertion failed: " << f << "\n";
        return res.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
