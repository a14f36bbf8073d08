#include "qsdome/fixtures.hpp"

#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qsdome::fixtures {

namespace {

constexpr double kPi = std::numbers::pi;

// Appends a..b (a included, b excluded) split into m pieces.
void push_segment(std::vector<Vec2>& out, Vec2 a, Vec2 b, size_t m) {
    for (size_t j = 0; j < m; ++j) out.push_back(lerp(a, b, static_cast<double>(j) / static_cast<double>(m)));
}

size_t pieces(double len, double spacing) { return std::max<size_t>(1, static_cast<size_t>(std::ceil(len / spacing))); }

}  // namespace

JordanCurve circle(double r, size_t n) {
    if (r <= 0) throw std::invalid_argument("circle radius must be positive");
    std::vector<Vec2> v(n);
    for (size_t i = 0; i < n; ++i) {
        double a = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
        v[i] = {r * std::cos(a), r * std::sin(a)};
    }
    return JordanCurve(std::move(v));
}

JordanCurve ellipse(double a, double b, size_t n) {
    if (a <= 0 || b <= 0) throw std::invalid_argument("ellipse axes must be positive");
    std::vector<Vec2> v(n);
    for (size_t i = 0; i < n; ++i) {
        double t = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
        v[i] = {a * std::cos(t), b * std::sin(t)};
    }
    return JordanCurve(std::move(v));
}

JordanCurve square(double s, size_t per_side) {
    if (s <= 0) throw std::invalid_argument("square side must be positive");
    per_side = std::max<size_t>(1, per_side);
    std::vector<Vec2> v;
    Vec2 c[4] = {{0, 0}, {s, 0}, {s, s}, {0, s}};
    for (int k = 0; k < 4; ++k) push_segment(v, c[k], c[(k + 1) % 4], per_side);
    return JordanCurve(std::move(v));
}

JordanCurve regular_polygon(size_t k, double r, size_t per_side) {
    if (k < 3) throw std::invalid_argument("polygon needs k >= 3");
    per_side = std::max<size_t>(1, per_side);
    std::vector<Vec2> v;
    for (size_t i = 0; i < k; ++i) {
        double a0 = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(k);
        double a1 = 2.0 * kPi * static_cast<double>(i + 1) / static_cast<double>(k);
        push_segment(v, {r * std::cos(a0), r * std::sin(a0)}, {r * std::cos(a1), r * std::sin(a1)}, per_side);
    }
    return JordanCurve(std::move(v));
}

JordanCurve dumbbell(double radius, double separation, double neck, size_t n) {
    if (!(neck > 0 && neck < radius && separation > 2 * std::sqrt(radius * radius - neck * neck)))
        throw std::invalid_argument("dumbbell parameters do not give a simple curve");
    double a = std::asin(neck / radius);
    double cx = 0.5 * separation;
    double spacing = 2.0 * kPi * radius / static_cast<double>(std::max<size_t>(n / 2, 8));
    std::vector<Vec2> v;
    size_t m = pieces((2.0 * kPi - 2.0 * a) * radius, spacing);
    // right disk: angles -(pi - a) .. (pi - a)
    for (size_t j = 0; j < m; ++j) {
        double t = -(kPi - a) + (2.0 * kPi - 2.0 * a) * static_cast<double>(j) / static_cast<double>(m);
        v.push_back({cx + radius * std::cos(t), radius * std::sin(t)});
    }
    Vec2 ru{cx - radius * std::cos(a), neck}, lu{-cx + radius * std::cos(a), neck};
    push_segment(v, ru, lu, pieces(dist(ru, lu), spacing));
    // left disk: angles a .. 2pi - a
    for (size_t j = 0; j < m; ++j) {
        double t = a + (2.0 * kPi - 2.0 * a) * static_cast<double>(j) / static_cast<double>(m);
        v.push_back({-cx + radius * std::cos(t), radius * std::sin(t)});
    }
    Vec2 ll{-cx + radius * std::cos(a), -neck}, rl{cx - radius * std::cos(a), -neck};
    push_segment(v, ll, rl, pieces(dist(ll, rl), spacing));
    return JordanCurve(std::move(v));
}

JordanCurve cusp(size_t n) {
    n = std::max<size_t>(n, 4);
    std::vector<Vec2> v;
    for (size_t i = 0; i < n; ++i) {
        double s = static_cast<double>(i) / static_cast<double>(n);
        v.push_back({s, -s * s});
    }
    push_segment(v, {1, -1}, {1, 1}, std::max<size_t>(1, n / 2));
    for (size_t i = n; i > 0; --i) {
        double s = static_cast<double>(i) / static_cast<double>(n);
        v.push_back({s, s * s});
    }
    return JordanCurve(std::move(v));
}

JordanCurve spike(double depth, double width, size_t n) {
    if (!(width > 0 && width < 2 && depth > 0 && depth < 1.5))
        throw std::invalid_argument("spike parameters out of range");
    double th = std::asin(0.5 * width);
    double spacing = 2.0 * kPi / static_cast<double>(n);
    std::vector<Vec2> v;
    size_t m = pieces(2.0 * kPi - 2.0 * th, spacing);
    for (size_t j = 0; j < m; ++j) {
        double t = th + (2.0 * kPi - 2.0 * th) * static_cast<double>(j) / static_cast<double>(m);
        v.push_back({std::cos(t), std::sin(t)});
    }
    Vec2 lo{std::cos(th), -std::sin(th)}, tip{1.0 - depth, 0.0}, hi{std::cos(th), std::sin(th)};
    push_segment(v, lo, tip, pieces(dist(lo, tip), spacing));
    push_segment(v, tip, hi, pieces(dist(tip, hi), spacing));
    return JordanCurve(std::move(v));
}

JordanCurve from_spec(const std::string& spec) {
    std::string name = spec;
    std::map<std::string, double> kv;
    if (auto colon = spec.find(':'); colon != std::string::npos) {
        name = spec.substr(0, colon);
        std::stringstream ss(spec.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("fixture parameter needs key=value: " + item);
            size_t used = 0;
            std::string val = item.substr(eq + 1);
            double d = std::stod(val, &used);
            if (used != val.size()) throw std::invalid_argument("bad fixture parameter value: " + item);
            kv[item.substr(0, eq)] = d;
        }
    }
    auto get = [&](const char* k, double def) {
        auto it = kv.find(k);
        double v = it == kv.end() ? def : it->second;
        kv.erase(k);
        return v;
    };
    auto count = [&](const char* k, double def) { return static_cast<size_t>(std::llround(get(k, def))); };
    auto finish = [&](JordanCurve c) {
        if (!kv.empty()) throw std::invalid_argument("unknown fixture parameter '" + kv.begin()->first + "' for " + name);
        return c;
    };
    if (name == "circle") {
        double r = get("r", 1.0);
        return finish(circle(r, count("n", 2048)));
    }
    if (name == "ellipse") {
        double a = get("a", 1.0), b = get("b", 0.5);
        return finish(ellipse(a, b, count("n", 2048)));
    }
    if (name == "square") {
        double s = get("s", 1.0);
        return finish(square(s, count("n", 1)));
    }
    if (name == "polygon" || name == "hexagon") {
        size_t k = count("k", 6);
        double r = get("r", 1.0);
        return finish(regular_polygon(k, r, count("n", 1)));
    }
    if (name == "dumbbell") {
        double r = get("radius", 1.0), s = get("separation", 3.0), w = get("neck", 0.1);
        return finish(dumbbell(r, s, w, count("n", 2048)));
    }
    if (name == "cusp") return finish(cusp(count("n", 1024)));
    if (name == "spike") {
        double d = get("depth", 0.5), w = get("width", 0.1);
        return finish(spike(d, w, count("n", 2048)));
    }
    throw std::invalid_argument("unknown fixture: " + name);
}

}  // namespace qsdome::fixtures
