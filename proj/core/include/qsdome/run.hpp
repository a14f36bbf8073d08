#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsdome/curve.hpp"

namespace qsdome {

inline const std::vector<std::string>& run_commands() {
    static const std::vector<std::string> cmds{"analyze-curve",    "level-scan",        "build-surface", "probe-llc",
                                               "probe-regularity", "verify-cone-map",   "necessity-check"};
    return cmds;
}

struct RunConfig {
    std::string command;
    std::string fixture = "circle";  // fixture spec, e.g. "dumbbell:neck=0.2"
    std::string curve_file;          // overrides fixture when set
    std::string gauge = "identity";
    size_t resolution = 512;
    std::string ladder = "geometric:12";  // or "list:e1,e2,..."
    double K_max = 100.0;
    double c_max = 100.0;
    std::string map = "quadratic:0.3";
    std::string radii;        // comma list; empty for dyadic defaults
    std::string lambda_grid;  // comma list; empty for the default grid
    size_t centers = 32;
    std::string mesh_format = "obj";
    std::string output_dir;  // empty: $QSDOME_OUTPUT_DIR, then "qsdome-out"
    uint64_t seed = 1;
    size_t threads = 1;
    bool record_time = false;
    bool svg = true;
};

struct RunResult {
    int exit_code = 0;  // 0 ok, 1 a hard assertion failed
    std::string output_dir;
    std::string report_path;
    std::string report;  // report.json contents
    std::vector<std::string> failed_assertions;
};

// Validates the config, runs the command, writes report.json and artifacts.
// Throws std::invalid_argument / std::runtime_error for configuration and input errors.
RunResult run(const RunConfig& config);

// Whitespace- or comma-separated "x y" lines ('#' comments), or a JSON array of [x, y] pairs.
JordanCurve read_curve_file(const std::string& path);

}  // namespace qsdome
