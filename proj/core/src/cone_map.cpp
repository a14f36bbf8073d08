#include "qsdome/cone_map.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qsdome/parallel.hpp"

namespace qsdome {

ConformalMap ConformalMap::identity() { return ConformalMap(); }

ConformalMap ConformalMap::quadratic(cplx c) {
    if (!(std::abs(c) <= 0.5)) throw std::invalid_argument("quadratic map needs |c| <= 1/2");
    ConformalMap m;
    m.kind_ = MapKind::quadratic;
    m.p_ = c;
    return m;
}

ConformalMap ConformalMap::moebius(cplx a) {
    if (!(std::abs(a) < 1.0)) throw std::invalid_argument("moebius map needs |a| < 1");
    ConformalMap m;
    m.kind_ = MapKind::moebius;
    m.p_ = a;
    return m;
}

ConformalMap ConformalMap::affine(cplx s, cplx b) {
    if (s == cplx(0.0, 0.0) || !std::isfinite(std::abs(s)) || !std::isfinite(std::abs(b)))
        throw std::invalid_argument("affine map needs a finite nonzero scale");
    ConformalMap m;
    m.kind_ = MapKind::affine;
    m.p_ = s;
    m.q_ = b;
    return m;
}

ConformalMap ConformalMap::compose(std::vector<ConformalMap> maps) {
    if (maps.empty()) return identity();
    // trailing similarities act on the image plane and are always allowed
    size_t core = maps.size();
    while (core > 1 && maps[core - 1].kind_ == MapKind::affine) --core;
    for (size_t i = 0; i + 1 < core; ++i)
        if (maps[i].kind_ != MapKind::identity && maps[i].kind_ != MapKind::moebius)
            throw std::invalid_argument("only disk automorphisms may precede the last map of a composition");
    if (maps.size() == 1) return maps.front();
    ConformalMap m;
    m.kind_ = MapKind::composition;
    m.parts_ = std::move(maps);
    return m;
}

namespace {

cplx parse_complex(const std::string& s) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t used = 0;
        double x = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("bad number in map spec: " + tok);
        v.push_back(x);
    }
    if (v.size() == 1) return {v[0], 0.0};
    if (v.size() == 2) return {v[0], v[1]};
    throw std::invalid_argument("expected one or two numbers in map spec: " + s);
}

ConformalMap parse_one(const std::string& spec) {
    auto colon = spec.find(':');
    std::string name = spec.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (name == "identity" && args.empty()) return ConformalMap::identity();
    if (name == "quadratic") return ConformalMap::quadratic(parse_complex(args));
    if (name == "moebius") return ConformalMap::moebius(parse_complex(args));
    if (name == "affine") {
        std::vector<double> v;
        std::stringstream ss(args);
        std::string tok;
        while (std::getline(ss, tok, ',')) v.push_back(std::stod(tok));
        if (v.size() != 4) throw std::invalid_argument("affine needs sre,sim,bre,bim");
        return ConformalMap::affine({v[0], v[1]}, {v[2], v[3]});
    }
    throw std::invalid_argument("unknown map spec: " + spec);
}

std::string shortest(double v) {
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string fmt_complex(cplx c) {
    std::string s = shortest(c.real());
    if (c.imag() != 0.0) s += ',' + shortest(c.imag());
    return s;
}

}  // namespace

ConformalMap ConformalMap::parse(const std::string& spec) {
    std::vector<ConformalMap> parts;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, '>')) parts.push_back(parse_one(tok));
    if (parts.empty()) throw std::invalid_argument("empty map spec");
    return compose(std::move(parts));
}

cplx ConformalMap::f(cplx z) const {
    switch (kind_) {
        case MapKind::identity: return z;
        case MapKind::quadratic: return z + p_ * z * z;
        case MapKind::moebius: return (z + p_) / (1.0 + std::conj(p_) * z);
        case MapKind::affine: return p_ * z + q_;
        case MapKind::composition:
            for (const auto& m : parts_) z = m.f(z);
            return z;
    }
    return z;
}

cplx ConformalMap::df(cplx z) const {
    switch (kind_) {
        case MapKind::identity: return 1.0;
        case MapKind::quadratic: return 1.0 + 2.0 * p_ * z;
        case MapKind::moebius: {
            cplx den = 1.0 + std::conj(p_) * z;
            return (1.0 - std::norm(p_)) / (den * den);
        }
        case MapKind::affine: return p_;
        case MapKind::composition: {
            cplx d = 1.0;
            for (const auto& m : parts_) {
                d *= m.df(z);
                z = m.f(z);
            }
            return d;
        }
    }
    return 1.0;
}

std::string ConformalMap::describe() const {
    switch (kind_) {
        case MapKind::identity: return "identity";
        case MapKind::quadratic: return "quadratic:" + fmt_complex(p_);
        case MapKind::moebius: return "moebius:" + fmt_complex(p_);
        case MapKind::affine: {
            return "affine:" + shortest(p_.real()) + ',' + shortest(p_.imag()) + ',' + shortest(q_.real()) + ',' +
                   shortest(q_.imag());
        }
        case MapKind::composition: {
            std::string s;
            for (size_t i = 0; i < parts_.size(); ++i) s += (i ? ">" : "") + parts_[i].describe();
            return s;
        }
    }
    return "identity";
}

std::vector<ConformalMap> map_registry() {
    return {ConformalMap::identity(),
            ConformalMap::quadratic(0.3),
            ConformalMap::quadratic(0.5),
            ConformalMap::quadratic(cplx(0.0, 0.4)),
            ConformalMap::moebius(0.5),
            ConformalMap::moebius(cplx(0.6, -0.6)),
            ConformalMap::moebius(0.9),
            ConformalMap::compose({ConformalMap::moebius(0.5), ConformalMap::quadratic(0.2)})};
}

double boundary_distance(const ConformalMap& map, cplx x) {
    if (!(std::abs(x) < 1.0)) throw std::domain_error("boundary distance needs |x| < 1");
    const size_t n = 4096;
    const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
    cplx w = map.f(x);
    auto g = [&](double th) { return std::abs(w - map.f(std::polar(1.0, th))); };
    std::vector<double> v(n);
    for (size_t k = 0; k < n; ++k) v[k] = g(step * static_cast<double>(k));
    std::vector<size_t> idx(n);
    for (size_t k = 0; k < n; ++k) idx[k] = k;
    std::partial_sort(idx.begin(), idx.begin() + 3, idx.end(), [&](size_t a, size_t b) { return v[a] < v[b]; });
    double best = v[idx[0]];
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int c = 0; c < 3; ++c) {
        double a = step * (static_cast<double>(idx[c]) - 1.0), b = step * (static_cast<double>(idx[c]) + 1.0);
        double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
        double f1 = g(x1), f2 = g(x2);
        for (int it = 0; it < 80 && b - a > 1e-15; ++it) {
            if (f1 < f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - invphi * (b - a);
                f1 = g(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + invphi * (b - a);
                f2 = g(x2);
            }
        }
        best = std::min({best, f1, f2});
    }
    return best;
}

std::vector<cplx> koebe_samples(size_t n, double rmax) {
    std::vector<cplx> out;
    out.reserve(n);
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (size_t k = 0; k < n; ++k) {
        double u = (static_cast<double>(k) + 0.5) / static_cast<double>(n);
        // radius uniform in log(1 - r) between 1 and 1 - rmax
        double r = 1.0 - std::pow(1.0 - rmax, u);
        out.push_back(std::polar(r, golden * static_cast<double>(k)));
    }
    return out;
}

KoebeReport koebe_check(const ConformalMap& map, const std::vector<cplx>& samples, double tol) {
    KoebeReport rep;
    rep.map = map.describe();
    rep.samples = samples.size();
    std::vector<KoebeViolation> vals(samples.size());
    parallel_for(samples.size(), [&](size_t i) {
        cplx x = samples[i];
        double d = boundary_distance(map, x);
        double s = 1.0 - std::norm(x);
        vals[i] = {x, d / s, std::abs(map.df(x)), 4.0 * d / s};
    });
    rep.min_lower_margin = rep.min_upper_margin = std::numeric_limits<double>::infinity();
    for (const auto& v : vals) {
        rep.min_lower_margin = std::min(rep.min_lower_margin, v.derivative / v.lower);
        rep.min_upper_margin = std::min(rep.min_upper_margin, v.upper / v.derivative);
        if (v.lower > v.derivative * (1.0 + tol) || v.derivative > v.upper * (1.0 + tol)) rep.violations.push_back(v);
    }
    return rep;
}

Vec3 dome_map(const ConformalMap& map, Vec3 p) {
    cplx x(p.x, p.y);
    double ax = std::abs(x);
    if (!(std::abs(p.z) < 1.0 - ax)) throw std::domain_error("dome map needs |z| < 1 - |x|");
    double d = boundary_distance(map, x);
    cplx w = map.f(x);
    double z = d / (1.0 - ax) * p.z;
    if (!(std::abs(z) < d) && p.z != 0.0) throw std::logic_error("dome map image outside the cone over the image domain");
    return {w.real(), w.imag(), z};
}

double linear_dilatation(const ConformalMap& map, Vec3 p, double h) {
    double J[3][3];
    for (int c = 0; c < 3; ++c) {
        Vec3 e{c == 0 ? h : 0.0, c == 1 ? h : 0.0, c == 2 ? h : 0.0};
        Vec3 d = (dome_map(map, p + e) - dome_map(map, p - e)) * (0.5 / h);
        J[0][c] = d.x;
        J[1][c] = d.y;
        J[2][c] = d.z;
    }
    // eigenvalues of the symmetric matrix J^T J
    double A[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) A[i][j] = J[0][i] * J[0][j] + J[1][i] * J[1][j] + J[2][i] * J[2][j];
    double p1 = A[0][1] * A[0][1] + A[0][2] * A[0][2] + A[1][2] * A[1][2];
    double q = (A[0][0] + A[1][1] + A[2][2]) / 3.0;
    double p2 = (A[0][0] - q) * (A[0][0] - q) + (A[1][1] - q) * (A[1][1] - q) + (A[2][2] - q) * (A[2][2] - q) + 2.0 * p1;
    double pp = std::sqrt(p2 / 6.0);
    if (pp == 0.0) return 1.0;
    double B[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) B[i][j] = (A[i][j] - (i == j ? q : 0.0)) / pp;
    double detB = B[0][0] * (B[1][1] * B[2][2] - B[1][2] * B[2][1]) - B[0][1] * (B[1][0] * B[2][2] - B[1][2] * B[2][0]) +
                  B[0][2] * (B[1][0] * B[2][1] - B[1][1] * B[2][0]);
    double phi = std::acos(std::clamp(detB / 2.0, -1.0, 1.0)) / 3.0;
    double e1 = q + 2.0 * pp * std::cos(phi);
    double e3 = q + 2.0 * pp * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    if (!(e3 > 0.0)) return std::numeric_limits<double>::infinity();
    return std::sqrt(e1 / e3);
}

namespace {

double frac(double v) { return v - std::floor(v); }

// Nested quasi-random points: the first n of any longer sequence are the same.
cplx disk_point(cplx base, double radius, size_t k) {
    double u = frac(0.5 + static_cast<double>(k) * 0.7548776662466927);
    double v = frac(0.5 + static_cast<double>(k) * 0.5698402909980532);
    return base + std::polar(radius * std::sqrt(u), 2.0 * std::numbers::pi * v);
}

Vec3 ball_point(cplx base, double radius, size_t k) {
    double u = frac(0.5 + static_cast<double>(k) * 0.8191725133961645);
    double v = frac(0.5 + static_cast<double>(k) * 0.6710436067037893);
    double w = frac(0.5 + static_cast<double>(k) * 0.5497004779019703);
    double ct = 2.0 * v - 1.0, st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    double ph = 2.0 * std::numbers::pi * w;
    double r = radius * std::cbrt(u) * (1.0 - 1e-9);
    return {base.real() + r * st * std::cos(ph), base.imag() + r * st * std::sin(ph), r * ct};
}

void require_bases(const std::vector<cplx>& bases) {
    for (auto b : bases)
        if (!(std::abs(b) < 1.0)) throw std::domain_error("Whitney base must lie in the open disk");
}

}  // namespace

DistortionReport dd_check(const ConformalMap& map, const std::vector<cplx>& bases, size_t n) {
    require_bases(bases);
    DistortionReport rep;
    rep.map = map.describe();
    rep.balls.resize(bases.size());
    std::vector<double> half(bases.size());
    parallel_for(bases.size(), [&](size_t b) {
        cplx x0 = bases[b];
        double rho = (1.0 - std::abs(x0)) / 2.0;
        double scale = (1.0 - std::abs(x0)) / std::abs(map.df(x0));
        std::vector<cplx> pts(2 * n);
        std::vector<double> D(2 * n);
        for (size_t k = 0; k < 2 * n; ++k) {
            pts[k] = disk_point(x0, rho, k);
            D[k] = boundary_distance(map, pts[k]) / (1.0 - std::abs(pts[k]));
        }
        double sup_n = 0.0, sup_2n = 0.0;
        for (size_t i = 0; i < 2 * n; ++i)
            for (size_t j = i + 1; j < 2 * n; ++j) {
                double sep = std::abs(pts[i] - pts[j]);
                if (sep < rho / 8.0) continue;
                double q = std::abs(D[i] - D[j]) * scale / sep;
                sup_2n = std::max(sup_2n, q);
                if (j < n) sup_n = std::max(sup_n, q);
            }
        rep.balls[b] = {x0, rho, sup_2n};
        half[b] = sup_n;
    });
    for (size_t b = 0; b < bases.size(); ++b) {
        rep.sup = std::max(rep.sup, rep.balls[b].value);
        rep.sup_half = std::max(rep.sup_half, half[b]);
    }
    return rep;
}

DistortionReport dilatation_estimate(const ConformalMap& map, const std::vector<cplx>& bases, size_t n) {
    require_bases(bases);
    DistortionReport rep;
    rep.map = map.describe();
    rep.balls.resize(bases.size());
    std::vector<double> half(bases.size());
    parallel_for(bases.size(), [&](size_t b) {
        cplx x0 = bases[b];
        double rho = (1.0 - std::abs(x0)) / 2.0;
        std::vector<Vec3> p(2 * n), q(2 * n);
        for (size_t k = 0; k < 2 * n; ++k) {
            p[k] = ball_point(x0, rho, k);
            q[k] = dome_map(map, p[k]);
        }
        auto ratio = [&](size_t m) {
            double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
            for (size_t i = 0; i < m; ++i)
                for (size_t j = i + 1; j < m; ++j) {
                    double sep = dist(p[i], p[j]);
                    if (sep < rho / 8.0) continue;
                    double s = dist(q[i], q[j]) / sep;
                    lo = std::min(lo, s);
                    hi = std::max(hi, s);
                }
            return hi / lo;
        };
        double local = 0.0;
        for (size_t k = 0; k < n; ++k) local = std::max(local, linear_dilatation(map, p[k], 1e-5 * rho));
        rep.balls[b] = {x0, rho, ratio(2 * n), local};
        half[b] = ratio(n);
    });
    for (size_t b = 0; b < bases.size(); ++b) {
        rep.sup = std::max(rep.sup, rep.balls[b].value);
        rep.sup_half = std::max(rep.sup_half, half[b]);
        rep.local_sup = std::max(rep.local_sup, rep.balls[b].local);
    }
    return rep;
}

}  // namespace qsdome
