#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qsdome/run.hpp"
#include "qsdome/svg.hpp"

using namespace qsdome;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("qsdome_test_run_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("report schema and artifact manifest") {
    RunConfig cfg;
    cfg.command = "build-surface";
    cfg.fixture = "circle";
    cfg.resolution = 128;
    cfg.output_dir = scratch("schema").string();
    auto res = run(cfg);
    CHECK(res.exit_code == 0);
    auto j = json::parse(slurp(res.report_path));
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    for (const char* k : {"command", "config", "metrics", "witnesses", "artifacts", "wall_time"})
        CHECK(std::find(keys.begin(), keys.end(), k) != keys.end());
    CHECK(j["wall_time"].is_null());
    CHECK(j["metrics"]["euler_characteristic"] == 2);
    for (const auto& a : j["artifacts"]) CHECK(fs::exists(fs::path(cfg.output_dir) / a.get<std::string>()));
    // nothing written that is not listed
    for (const auto& e : fs::directory_iterator(cfg.output_dir)) {
        bool listed = false;
        for (const auto& a : j["artifacts"]) listed = listed || a == e.path().filename().string();
        CHECK(listed);
    }
}

TEST_CASE("identical config and seed give identical bytes") {
    for (std::string cmd : {"analyze-curve", "level-scan", "probe-llc", "probe-regularity", "verify-cone-map"}) {
        RunConfig cfg;
        cfg.command = cmd;
        cfg.fixture = "ellipse";
        cfg.resolution = 128;
        cfg.centers = 6;
        cfg.ladder = "geometric:4";
        cfg.seed = 7;
        cfg.output_dir = scratch(cmd + "_a").string();
        auto a = run(cfg);
        cfg.output_dir = scratch(cmd + "_b").string();
        cfg.threads = 3;
        auto b = run(cfg);
        CAPTURE(cmd);
        CHECK(a.report == b.report);
        CHECK(slurp(a.report_path) == slurp(b.report_path));
    }
}

TEST_CASE("seed moves probe centers") {
    RunConfig cfg;
    cfg.command = "probe-regularity";
    cfg.fixture = "circle";
    cfg.resolution = 128;
    cfg.centers = 4;
    cfg.svg = false;
    cfg.output_dir = scratch("seed1").string();
    auto a = run(cfg);
    cfg.seed = 2;
    cfg.output_dir = scratch("seed2").string();
    auto b = run(cfg);
    CHECK(a.report != b.report);
}

TEST_CASE("wall time only on request") {
    RunConfig cfg;
    cfg.command = "verify-cone-map";
    cfg.map = "moebius:0.5";
    cfg.record_time = true;
    cfg.output_dir = scratch("time").string();
    auto j = json::parse(run(cfg).report);
    CHECK(j["wall_time"].is_number());
    CHECK(j["metrics"]["koebe_violations"] == 0);
}

TEST_CASE("configuration errors are raised before any output") {
    RunConfig cfg;
    cfg.output_dir = scratch("errors").string();
    cfg.command = "frobnicate";
    CHECK_THROWS_AS(run(cfg), std::invalid_argument);
    cfg.command = "build-surface";
    cfg.fixture = "nonagon";
    CHECK_THROWS(run(cfg));
    cfg.fixture = "circle";
    cfg.gauge = "power:-1";
    CHECK_THROWS(run(cfg));
    cfg.gauge = "identity";
    cfg.curve_file = "/nonexistent/curve.txt";
    CHECK_THROWS_AS(run(cfg), std::runtime_error);
    cfg.curve_file.clear();
    cfg.command = "necessity-check";
    cfg.gauge = "power:2";
    CHECK_THROWS_AS(run(cfg), std::invalid_argument);
    CHECK_FALSE(fs::exists(cfg.output_dir));
}

TEST_CASE("curve files in both formats") {
    auto dir = scratch("curves");
    fs::create_directories(dir);
    {
        std::ofstream t(dir / "sq.txt");
        t << "# unit square\n0 0\n1 0\n1,1\n\n0 1  # last\n";
        std::ofstream j(dir / "sq.json");
        j << "[[0,0],[1,0],[1,1],[0,1]]";
        std::ofstream bad(dir / "bad.txt");
        bad << "0 0\n1\n";
    }
    auto a = read_curve_file((dir / "sq.txt").string());
    auto b = read_curve_file((dir / "sq.json").string());
    CHECK(a.size() == 4);
    CHECK(b.size() == 4);
    CHECK(a.signed_area() == doctest::Approx(1.0));
    CHECK(b.length() == doctest::Approx(4.0));
    CHECK_THROWS_AS(read_curve_file((dir / "bad.txt").string()), std::invalid_argument);
}

TEST_CASE("hard assertion failure gives exit code 1") {
    RunConfig cfg;
    cfg.command = "probe-llc";
    cfg.fixture = "circle";
    cfg.gauge = "power:2";
    cfg.resolution = 128;
    cfg.centers = 8;
    cfg.svg = false;
    cfg.output_dir = scratch("exit").string();
    cfg.lambda_grid = "1,1.25";
    auto bad = run(cfg);
    CHECK(bad.exit_code == 1);
    CHECK_FALSE(bad.failed_assertions.empty());
    CHECK(fs::exists(bad.report_path));
    cfg.gauge = "identity";
    cfg.lambda_grid.clear();
    auto ok = run(cfg);
    CHECK(ok.exit_code == 0);
    CHECK(ok.failed_assertions.empty());
}

TEST_CASE("svg output is stroke-only and well formed") {
    std::ostringstream os;
    svg::write_paths(os, {{{{0, 0}, {1, 0}, {0, 1}}, true, "#123", 1.0}});
    std::string s = os.str();
    CHECK(s.rfind("<svg", 0) == 0);
    CHECK(s.find("</svg>") != std::string::npos);
    CHECK(s.find("fill=\"none\"") != std::string::npos);
    std::ostringstream ll;
    svg::write_loglog(ll, {{{{0.1, 1.0}, {1.0, 2.0}}, "#c00"}}, "r", "ratio");
    CHECK(ll.str().find("stroke=\"#c00\"") != std::string::npos);
}
