#include "qsdome/run.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qsdome/cone_map.hpp"
#include "qsdome/distance_levels.hpp"
#include "qsdome/fixtures.hpp"
#include "qsdome/gauges.hpp"
#include "qsdome/metric_probes.hpp"
#include "qsdome/parallel.hpp"
#include "qsdome/surface.hpp"
#include "qsdome/svg.hpp"

namespace qsdome {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
json vec(Vec2 p) { return json::array({num(p.x), num(p.y)}); }
json vec(Vec3 p) { return json::array({num(p.x), num(p.y), num(p.z)}); }

std::vector<double> parse_list(const std::string& s, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t used = 0;
        double v;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string("bad number in ") + what + ": " + tok);
        }
        if (used != tok.size()) throw std::invalid_argument(std::string("bad number in ") + what + ": " + tok);
        out.push_back(v);
    }
    return out;
}

struct Context {
    const RunConfig& cfg;
    fs::path dir;
    json metrics = json::object();
    json witnesses = json::array();
    json artifacts = json::array();
    std::vector<std::string> failed;

    void expect(bool ok, const std::string& what) {
        if (!ok) failed.push_back(what);
    }
    std::ofstream open(const std::string& name) {
        std::ofstream os(dir / name);
        if (!os) throw std::runtime_error("cannot write " + (dir / name).string());
        artifacts.push_back(name);
        return os;
    }
};

JordanCurve load_curve(const RunConfig& cfg) {
    if (!cfg.curve_file.empty()) return read_curve_file(cfg.curve_file);
    return fixtures::from_spec(cfg.fixture);
}

void analyze_curve(Context& cx, const JordanCurve& c) {
    auto tp = two_point_constant(c);
    auto ca = chord_arc_constant(c);
    std::vector<double> radii;
    for (double r = c.diameter() / 4; radii.size() < 6; r /= 2) radii.push_back(r);
    auto fl = flatness_profile(c, radii);
    json prof = json::array();
    for (const auto& e : fl.entries)
        prof.push_back({{"r", num(e.r)}, {"shell", num(e.shell)}, {"envelope", num(e.envelope)},
                        {"exceeds_diameter", e.exceeds_diameter}});
    cx.metrics = {{"vertices", c.size()},
                  {"length", num(c.length())},
                  {"area", num(c.signed_area())},
                  {"diameter", num(c.diameter())},
                  {"two_point", num(tp.value)},
                  {"two_point_samples", tp.samples},
                  {"chord_arc", num(ca.value)},
                  {"flatness_profile", prof},
                  {"flatness_estimate", num(fl.estimate)},
                  {"flatness_scale", num(fl.estimate_scale)},
                  {"flatness_trusted", fl.estimate_trusted}};
    cx.witnesses.push_back({{"constant", "two_point"}, {"x", vec(tp.argmax_x.position)}, {"y", vec(tp.argmax_y.position)}});
    cx.witnesses.push_back({{"constant", "chord_arc"}, {"x", vec(ca.argmax_x.position)}, {"y", vec(ca.argmax_y.position)}});
    cx.expect(tp.value >= 1.0 - 1e-12, "two-point constant >= 1");
    cx.expect(ca.value >= 1.0 - 1e-12, "chord-arc constant >= 1");
    if (cx.cfg.svg) {
        auto os = cx.open("curve.svg");
        svg::write_paths(os, {{c.vertices(), true, "#000", 1.0},
                              {{tp.argmax_x.position, tp.argmax_y.position}, false, "#c00", 1.0}});
    }
}

void level_scan_cmd(Context& cx, const JordanCurve& c) {
    std::vector<double> ladder;
    const std::string& L = cx.cfg.ladder;
    if (L.rfind("geometric:", 0) == 0) {
        int n = std::stoi(L.substr(10));
        if (n < 1) throw std::invalid_argument("geometric ladder needs at least one level");
        DistanceField f(c, cx.cfg.resolution);
        ladder = geometric_ladder(inradius(f).radius, n);
    } else if (L.rfind("list:", 0) == 0) {
        ladder = parse_list(L.substr(5), "ladder");
    } else {
        throw std::invalid_argument("ladder must be geometric:N or list:e1,e2,...");
    }
    auto rep = level_scan(c, ladder, cx.cfg.K_max, cx.cfg.c_max, cx.cfg.resolution);
    json entries = json::array();
    for (const auto& e : rep.entries) {
        json j = {{"epsilon", num(e.epsilon)}, {"classification", to_string(e.classification)}, {"components", e.components}};
        j["two_point"] = e.two_point ? num(*e.two_point) : json(nullptr);
        j["chord_arc"] = e.chord_arc ? num(*e.chord_arc) : json(nullptr);
        j["proximity"] = e.proximity ? num(*e.proximity) : json(nullptr);
        entries.push_back(j);
    }
    auto opt = [](const std::optional<double>& v) { return v ? num(*v) : json(nullptr); };
    cx.metrics = {{"resolution", rep.resolution}, {"inradius", num(rep.inradius)}, {"K_max", num(rep.K_max)},
                  {"c_max", num(rep.c_max)},      {"entries", entries},            {"LJC", rep.ljc()},
                  {"LQC", rep.lqc()},             {"LCA", rep.lca()},              {"ljc_eps0", opt(rep.ljc_eps0)},
                  {"lqc_eps0", opt(rep.lqc_eps0)}, {"lca_eps0", opt(rep.lca_eps0)}};
    for (const auto& e : rep.entries)
        if (e.classification != LevelClass::jordan)
            cx.witnesses.push_back({{"epsilon", num(e.epsilon)}, {"classification", to_string(e.classification)}});
    cx.expect(!rep.lca() || rep.lqc(), "LCA implies LQC");
    cx.expect(!rep.lqc() || rep.ljc(), "LQC implies LJC");
    if (cx.cfg.svg) {
        std::vector<svg::Path> paths{{c.vertices(), true, "#000", 1.0}};
        DistanceField f(c, cx.cfg.resolution);
        for (double e : ladder) {
            auto ls = extract_level_set(f, e);
            for (auto& comp : ls.components) paths.push_back({comp, true, "#36c", 0.5});
        }
        auto os = cx.open("levels.svg");
        svg::write_paths(os, paths);
    }
}

void write_mesh(Context& cx, const SurfaceMesh& m, const std::string& stem) {
    if (cx.cfg.mesh_format == "obj") {
        auto os = cx.open(stem + ".obj");
        write_obj(m, os);
    } else if (cx.cfg.mesh_format == "ply") {
        auto os = cx.open(stem + ".ply");
        write_ply(m, os);
    }
}

void build_surface_cmd(Context& cx, const JordanCurve& c, const Gauge& g) {
    auto m = build_surface(c, g, cx.cfg.resolution);
    auto topo = mesh_topology(m);
    long chi = euler_characteristic(m);
    std::vector<std::array<double, 3>> up, down;
    double zmax = 0.0;
    for (auto& v : m.vertices) {
        up.push_back({v.x, v.y, v.z});
        down.push_back({v.x, v.y, -v.z});
        zmax = std::max(zmax, v.z);
    }
    std::sort(up.begin(), up.end());
    std::sort(down.begin(), down.end());
    double mirror = 0.0;
    for (size_t i = 0; i < up.size(); ++i)
        for (int k = 0; k < 3; ++k) mirror = std::max(mirror, std::abs(up[i][k] - down[i][k]));
    size_t equator = std::count(m.tags.begin(), m.tags.end(), VertexTag::equator);
    cx.metrics = {{"gauge", g.describe()},
                  {"vertices", m.vertices.size()},
                  {"edges", topo.edges},
                  {"triangles", m.triangles.size()},
                  {"equator_vertices", equator},
                  {"euler_characteristic", chi},
                  {"closed", topo.closed()},
                  {"area", num(m.area())},
                  {"volume", num(m.volume())},
                  {"max_height", num(zmax)},
                  {"mirror_error", num(mirror)}};
    cx.expect(topo.closed(), "surface mesh is closed");
    cx.expect(chi == 2, "Euler characteristic is 2");
    cx.expect(mirror <= 1e-12, "z-mirror symmetry");
    write_mesh(cx, m, "surface");
}

std::vector<double> radii_for(const Context& cx, const SurfaceMesh& m) {
    if (!cx.cfg.radii.empty()) return parse_list(cx.cfg.radii, "radii");
    return default_radii(m, 7);
}

std::vector<uint32_t> centers_for(const Context& cx, const SurfaceMesh& m) {
    // one random pick per |z| stratum (equator-heavy), reproducible from the seed
    std::vector<uint32_t> order(m.vertices.size());
    for (uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](uint32_t a, uint32_t b) { return std::abs(m.vertices[a].z) < std::abs(m.vertices[b].z); });
    std::mt19937_64 rng(cx.cfg.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<uint32_t> out;
    size_t n = cx.cfg.centers;
    for (size_t k = 0; k < n; ++k) {
        double q = (static_cast<double>(k) + u(rng)) / static_cast<double>(n);
        out.push_back(order[std::min(order.size() - 1, static_cast<size_t>(q * q * static_cast<double>(order.size())))]);
    }
    return out;
}

json samples_json(const ProbeReport& rep) {
    json a = json::array();
    for (const auto& s : rep.samples)
        a.push_back({{"center_vertex", s.center_vertex}, {"center", vec(s.center)}, {"r", num(s.r)}, {"value", num(s.value)},
                     {"feasible", s.feasible}});
    return a;
}

void probe_llc_cmd(Context& cx, const JordanCurve& c, const Gauge& g) {
    auto m = build_surface(c, g, cx.cfg.resolution);
    auto cs = centers_for(cx, m);
    auto rs = radii_for(cx, m);
    LlcOptions opt;
    if (!cx.cfg.lambda_grid.empty()) opt.lambda_grid = parse_list(cx.cfg.lambda_grid, "lambda grid");
    json per_kind = json::object();
    std::vector<svg::Series> series;
    for (auto kind : {ProbeKind::llc1, ProbeKind::llc2}) {
        auto rep = llc_probe(m, cs, rs, kind, opt);
        json by_r = json::array();
        for (double r : rs) by_r.push_back({{"r", num(r)}, {"max_lambda", num(rep.max_lambda_at(r))}});
        per_kind[to_string(kind)] = {{"max_lambda", num(rep.max_lambda)}, {"all_feasible", rep.all_feasible},
                                     {"by_radius", by_r}, {"samples", samples_json(rep)}};
        size_t replayed = 0;
        for (const auto& s : rep.samples) {
            if (!s.witness) continue;
            cx.witnesses.push_back({{"probe", to_string(kind)}, {"center", vec(s.center)}, {"r", num(s.r)},
                                    {"lambda", num(s.witness->lambda)}, {"a", vec(s.witness->a)}, {"b", vec(s.witness->b)}});
            if (replayed < 4) {
                ++replayed;
                cx.expect(!llc_pair_connected(m, s.center, s.r, s.witness->lambda, kind, s.witness->a, s.witness->b, opt),
                          "LLC witness replays as disconnected");
            }
        }
        for (const auto& s : rep.samples) cx.expect(s.value >= 1.0, "every lambda >= 1");
        cx.expect(rep.all_feasible, to_string(kind) + " feasible within the lambda grid");
        svg::Series sr{{}, kind == ProbeKind::llc1 ? "#c00" : "#06c"};
        for (const auto& s : rep.samples) sr.points.push_back({s.r, s.value});
        series.push_back(sr);
    }
    cx.metrics = {{"gauge", g.describe()}, {"vertices", m.vertices.size()}, {"centers", cs.size()},
                  {"radii", rs},           {"lambda_grid", opt.lambda_grid}, {"probes", per_kind}};
    if (cx.cfg.svg) {
        auto os = cx.open("llc.svg");
        svg::write_loglog(os, series, "r", "lambda");
    }
}

void probe_regularity_cmd(Context& cx, const JordanCurve& c, const Gauge& g) {
    auto m = build_surface(c, g, cx.cfg.resolution);
    auto cs = centers_for(cx, m);
    auto rs = radii_for(cx, m);
    auto rep = regularity_probe(m, cs, rs);
    double C = std::max(rep.max_ratio, 1.0 / rep.min_ratio);
    cx.metrics = {{"gauge", g.describe()},          {"vertices", m.vertices.size()}, {"centers", cs.size()},
                  {"radii", rs},                    {"min_ratio", num(rep.min_ratio)}, {"max_ratio", num(rep.max_ratio)},
                  {"C", num(C)},                    {"samples", samples_json(rep)}};
    for (const auto& s : rep.samples) {
        if (s.value == rep.min_ratio || s.value == rep.max_ratio)
            cx.witnesses.push_back({{"center", vec(s.center)}, {"r", num(s.r)}, {"ratio", num(s.value)}});
        cx.expect(s.value > 0.0, "every regularity ratio > 0");
    }
    if (cx.cfg.svg) {
        svg::Series sr{{}, "#060"};
        for (const auto& s : rep.samples) sr.points.push_back({s.r, s.value});
        auto os = cx.open("regularity.svg");
        svg::write_loglog(os, {sr}, "r", "area / r^2");
    }
}

void verify_cone_map_cmd(Context& cx) {
    auto map = ConformalMap::parse(cx.cfg.map);
    auto samples = koebe_samples(1000, 0.99);
    auto kr = koebe_check(map, samples);
    for (const auto& v : kr.violations)
        cx.witnesses.push_back({{"check", "koebe"}, {"x", vec(Vec2{v.x.real(), v.x.imag()})}, {"lower", num(v.lower)},
                                {"derivative", num(v.derivative)}, {"upper", num(v.upper)}});
    cx.expect(kr.passed(), "Koebe inequalities at every sample");
    // dome map stays strictly inside the cone over the image
    size_t inside = 0;
    for (size_t k = 0; k < 200; ++k) {
        cplx x = samples[k * 5];
        double lim = 1.0 - std::abs(x);
        double z = lim * (2.0 * static_cast<double>(k % 10) / 10.0 - 0.95);
        Vec3 w = dome_map(map, {x.real(), x.imag(), z});
        if (std::abs(w.z) < boundary_distance(map, x) || z == 0.0) ++inside;
    }
    cx.expect(inside == 200, "dome map image inside the cone");
    std::vector<cplx> bases{0.0, 0.5, 0.9, 0.99};
    auto dd = dd_check(map, bases);
    auto dil = dilatation_estimate(map, bases);
    cx.expect(dd.stable(), "D-difference ratio stable under sample doubling");
    json balls = json::array();
    for (size_t b = 0; b < bases.size(); ++b)
        balls.push_back({{"base", num(bases[b].real())}, {"radius", num(dd.balls[b].radius)}, {"dd_ratio", num(dd.balls[b].value)},
                         {"pair_distortion", num(dil.balls[b].value)}, {"local_dilatation", num(dil.balls[b].local)}});
    cx.metrics = {{"map", map.describe()},
                  {"koebe_samples", kr.samples},
                  {"koebe_violations", kr.violations.size()},
                  {"koebe_min_lower_margin", num(kr.min_lower_margin)},
                  {"koebe_min_upper_margin", num(kr.min_upper_margin)},
                  {"dome_inside", inside},
                  {"dd_sup", num(dd.sup)},
                  {"dd_sup_half", num(dd.sup_half)},
                  {"distortion_sup", num(dil.sup)},
                  {"local_dilatation_sup", num(dil.local_sup)},
                  {"whitney_balls", balls}};
}

void necessity_cmd(Context& cx, const JordanCurve& c) {
    auto rep = necessity_check(c, Gauge::identity(), cx.cfg.resolution, cx.cfg.centers, 4);
    cx.metrics = {{"C_hat", num(rep.C_hat)},
                  {"lambda_hat", num(rep.lambda_hat)},
                  {"llc1_max_lambda", num(rep.llc1.max_lambda)},
                  {"llc2_max_lambda", num(rep.llc2.max_lambda)},
                  {"bound", num(rep.bound)},
                  {"holds", rep.holds}};
    cx.expect(rep.holds, "C_hat <= 1.5 * 32 * lambda_hat^2");
}

}  // namespace

JordanCurve read_curve_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read curve file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    std::vector<Vec2> pts;
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '[') {
        json j = json::parse(text);
        for (const auto& p : j) {
            if (!p.is_array() || p.size() != 2) throw std::invalid_argument("curve JSON must be an array of [x, y] pairs");
            pts.push_back({p[0].get<double>(), p[1].get<double>()});
        }
    } else {
        std::istringstream ls(text);
        std::string line;
        size_t lineno = 0;
        while (std::getline(ls, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.resize(hash);
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream fs(line);
            double x, y;
            if (!(fs >> x)) continue;
            std::string rest;
            if (!(fs >> y) || (fs >> rest)) throw std::invalid_argument("bad curve line " + std::to_string(lineno) + " in " + path);
            pts.push_back({x, y});
        }
    }
    return JordanCurve(std::move(pts));
}

RunResult run(const RunConfig& cfg) {
    const auto& cmds = run_commands();
    if (std::find(cmds.begin(), cmds.end(), cfg.command) == cmds.end())
        throw std::invalid_argument("unknown command: " + cfg.command);
    if (cfg.resolution < 64) throw std::invalid_argument("resolution must be at least 64");
    if (cfg.threads < 1) throw std::invalid_argument("threads must be positive");
    if (cfg.centers < 1) throw std::invalid_argument("centers must be positive");
    if (cfg.mesh_format != "obj" && cfg.mesh_format != "ply" && cfg.mesh_format != "none")
        throw std::invalid_argument("mesh format must be obj, ply or none");
    if (cfg.ladder.rfind("geometric:", 0) != 0 && cfg.ladder.rfind("list:", 0) != 0)
        throw std::invalid_argument("ladder must be geometric:N or list:e1,e2,...");
    if (!cfg.radii.empty()) (void)parse_list(cfg.radii, "radii");
    if (!cfg.lambda_grid.empty()) (void)parse_list(cfg.lambda_grid, "lambda grid");

    // Everything is validated before work starts.
    std::string out = cfg.output_dir;
    if (out.empty()) {
        const char* env = std::getenv("QSDOME_OUTPUT_DIR");
        out = env && *env ? env : "qsdome-out";
    }
    bool needs_curve = cfg.command != "verify-cone-map";
    std::optional<JordanCurve> curve;
    if (needs_curve) curve.emplace(load_curve(cfg));
    Gauge gauge = Gauge::parse(cfg.gauge);
    if (cfg.command == "verify-cone-map") (void)ConformalMap::parse(cfg.map);
    if (cfg.command == "necessity-check" && gauge.kind() != GaugeKind::identity)
        throw std::invalid_argument("necessity-check uses the identity gauge");
    if (fs::exists(out) && !fs::is_directory(out)) throw std::runtime_error("output path is not a directory: " + out);
    fs::create_directories(out);

    size_t saved_threads = thread_count();
    set_thread_count(cfg.threads);
    auto t0 = std::chrono::steady_clock::now();
    Context cx{cfg, fs::path(out), json::object(), json::array(), json::array(), {}};
    try {
        if (cfg.command == "analyze-curve") analyze_curve(cx, *curve);
        else if (cfg.command == "level-scan") level_scan_cmd(cx, *curve);
        else if (cfg.command == "build-surface") build_surface_cmd(cx, *curve, gauge);
        else if (cfg.command == "probe-llc") probe_llc_cmd(cx, *curve, gauge);
        else if (cfg.command == "probe-regularity") probe_regularity_cmd(cx, *curve, gauge);
        else if (cfg.command == "verify-cone-map") verify_cone_map_cmd(cx);
        else necessity_cmd(cx, *curve);
    } catch (...) {
        set_thread_count(saved_threads);
        throw;
    }
    set_thread_count(saved_threads);
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json config = {{"command", cfg.command},
                   {"fixture", cfg.curve_file.empty() ? json(cfg.fixture) : json(nullptr)},
                   {"curve_file", cfg.curve_file.empty() ? json(nullptr) : json(cfg.curve_file)},
                   {"gauge", cfg.gauge},
                   {"resolution", cfg.resolution},
                   {"ladder", cfg.ladder},
                   {"K_max", cfg.K_max},
                   {"c_max", cfg.c_max},
                   {"map", cfg.map},
                   {"radii", cfg.radii},
                   {"lambda_grid", cfg.lambda_grid},
                   {"centers", cfg.centers},
                   {"mesh_format", cfg.mesh_format},
                   {"seed", cfg.seed},
                   {"svg", cfg.svg}};
    json failed = json::array();
    for (const auto& f : cx.failed) failed.push_back(f);
    cx.artifacts.push_back("report.json");
    json report = {{"command", cfg.command},
                   {"config", config},
                   {"metrics", cx.metrics},
                   {"witnesses", cx.witnesses},
                   {"failed_assertions", failed},
                   {"artifacts", cx.artifacts},
                   {"wall_time", cfg.record_time ? json(elapsed) : json(nullptr)}};
    RunResult res;
    res.output_dir = out;
    res.report_path = (fs::path(out) / "report.json").string();
    res.report = report.dump(2) + "\n";
    {
        std::ofstream os(res.report_path);
        if (!os) throw std::runtime_error("cannot write " + res.report_path);
        os << res.report;
    }
    for (const auto& f : failed) res.failed_assertions.push_back(f.get<std::string>());
    res.exit_code = res.failed_assertions.empty() ? 0 : 1;
    return res;
}

}  // namespace qsdome
