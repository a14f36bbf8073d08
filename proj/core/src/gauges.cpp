#include "qsdome/gauges.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qsdome {

namespace {

std::vector<double> log_grid(double a, double b, size_t n) {
    std::vector<double> t(n);
    double la = std::log(a), lb = std::log(b);
    for (size_t k = 0; k < n; ++k) t[k] = std::exp(la + (lb - la) * static_cast<double>(k) / static_cast<double>(n - 1));
    t.front() = a;
    t.back() = b;
    return t;
}

struct Quotient {
    double value = 0.0;
    double at = 0.0;
};

Quotient max_quotient(const Gauge& g, const std::vector<double>& t) {
    Quotient q;
    double prev = g(t[0]);
    for (size_t k = 1; k < t.size(); ++k) {
        double cur = g(t[k]);
        double v = (cur - prev) / (t[k] - t[k - 1]);
        if (v > q.value) {
            q.value = v;
            q.at = t[k - 1];
        }
        prev = cur;
    }
    return q;
}

}  // namespace

Gauge Gauge::power(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("power gauge needs alpha > 0");
    Gauge g;
    g.kind_ = GaugeKind::power;
    g.alpha_ = alpha;
    return g;
}

Gauge Gauge::identity() { return Gauge{}; }

Gauge Gauge::counterexample() {
    Gauge g;
    g.kind_ = GaugeKind::counterexample;
    return g;
}

Gauge build_staircase_gauge(std::vector<std::pair<double, double>> pairs, double tail_slope) {
    if (pairs.empty()) throw std::invalid_argument("staircase gauge needs at least one (d, h) pair");
    if (!(tail_slope > 0.0)) throw std::invalid_argument("staircase tail slope must be positive");
    for (size_t n = 0; n < pairs.size(); ++n) {
        auto [d, h] = pairs[n];
        if (!(d > 0.0) || !(h > 0.0)) throw std::invalid_argument("staircase pairs must be positive");
        if (n > 0) {
            auto [dp, hp] = pairs[n - 1];
            if (!(d < dp)) throw std::invalid_argument("staircase d_n must be strictly decreasing");
            if (!(h < hp)) throw std::invalid_argument("staircase h_n must be strictly decreasing");
            if (h / d < hp / dp) throw std::invalid_argument("staircase h_n/d_n must be nondecreasing");
        }
    }
    Gauge g;
    g.kind_ = GaugeKind::staircase;
    g.pairs_ = std::move(pairs);
    g.tail_ = tail_slope;
    return g;
}

Gauge Gauge::parse(const std::string& spec, double tail_slope) {
    std::string name = spec, arg;
    if (auto c = spec.find(':'); c != std::string::npos) {
        name = spec.substr(0, c);
        arg = spec.substr(c + 1);
    }
    if (name == "identity" && arg.empty()) return identity();
    if (name == "counterexample" && arg.empty()) return counterexample();
    if (name == "power") {
        size_t used = 0;
        double a = 0.0;
        try {
            a = std::stod(arg, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != arg.size()) throw std::invalid_argument("invalid gauge: " + spec);
        return power(a);
    }
    if (name == "staircase") {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(arg);
        } catch (const std::exception&) {
            throw std::invalid_argument("staircase breakpoints must be a JSON array of [d, h]: " + arg);
        }
        std::vector<std::pair<double, double>> pairs;
        if (!j.is_array()) throw std::invalid_argument("staircase breakpoints must be a JSON array");
        for (const auto& p : j) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
                throw std::invalid_argument("staircase breakpoint must be [d, h]");
            pairs.emplace_back(p[0].get<double>(), p[1].get<double>());
        }
        return build_staircase_gauge(std::move(pairs), tail_slope);
    }
    throw std::invalid_argument("invalid gauge: " + spec);
}

double Gauge::operator()(double t) const {
    if (!(t >= 0.0)) throw std::domain_error("gauge argument must be nonnegative");
    switch (kind_) {
        case GaugeKind::identity: return t;
        case GaugeKind::power: return alpha_ == 1.0 ? t : std::pow(t, alpha_);
        case GaugeKind::counterexample:
            // 1 - sqrt(1 - t) written without cancellation
            return t <= 1.0 ? t / (1.0 + std::sqrt(1.0 - t)) : t;
        case GaugeKind::staircase: {
            const auto& p = pairs_;
            if (t >= p.front().first) return p.front().second + tail_ * (t - p.front().first);
            if (t <= p.back().first) return p.back().second * t / p.back().first;
            // p[n].first > t >= p[n+1].first
            size_t n = static_cast<size_t>(
                std::upper_bound(p.begin(), p.end(), t, [](double v, const auto& q) { return v > q.first; }) -
                p.begin());
            auto [d1, h1] = p[n - 1];
            auto [d0, h0] = p[n];
            return h0 + (t - d0) / (d1 - d0) * (h1 - h0);
        }
    }
    return t;
}

double eval(const Gauge& g, double t) { return g(t); }

std::string Gauge::describe() const {
    auto sh = [](double v) {
        char buf[32];
        auto r = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, r.ptr);
    };
    std::string os;
    switch (kind_) {
        case GaugeKind::identity: return "identity";
        case GaugeKind::counterexample: return "counterexample";
        case GaugeKind::power: return "power:" + sh(alpha_);
        case GaugeKind::staircase: {
            os = "staircase:[";
            for (size_t i = 0; i < pairs_.size(); ++i)
                os += (i ? ",[" : "[") + sh(pairs_[i].first) + "," + sh(pairs_[i].second) + "]";
            return os + "]";
        }
    }
    return "identity";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::in_F: return "in_F";
        case Verdict::not_in_F: return "not_in_F";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

MembershipReport validate_membership(const Gauge& g, double delta, const std::vector<double>& r_grid, double T,
                                     size_t samples) {
    if (!(delta > 0.0) || !(T > 0.0)) throw std::invalid_argument("delta and T must be positive");
    samples = std::max<size_t>(samples, 16);
    MembershipReport rep;
    bool inconclusive = false;
    auto fail = [&](const std::string& clause, double t, double v) {
        if (rep.verdict == Verdict::not_in_F) return;
        rep.verdict = Verdict::not_in_F;
        rep.violated_clause = clause;
        rep.witness_t = t;
        rep.witness_value = v;
    };

    if (g(0.0) != 0.0) fail("origin", 0.0, g(0.0));

    // liminf clause: phi(t)/t on a log grid towards 0
    auto tl = log_grid(delta * 1e-6, delta, 241);
    std::vector<double> lr(tl.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    rep.liminf_ratio_estimate = std::numeric_limits<double>::infinity();
    double tmin = tl.front();
    for (size_t k = 0; k < tl.size(); ++k) {
        double rho = g(tl[k]) / tl[k];
        if (!(rho > 0.0)) {
            fail("liminf", tl[k], rho);
            break;
        }
        if (rho < rep.liminf_ratio_estimate) {
            rep.liminf_ratio_estimate = rho;
            tmin = tl[k];
        }
        double x = std::log(tl[k]), y = std::log(rho);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double m = static_cast<double>(tl.size());
    rep.liminf_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    if (rep.liminf_slope > 0.05) fail("liminf", tmin, rep.liminf_ratio_estimate);
    else if (rep.liminf_slope > 0.01) inconclusive = true;

    // Lipschitz clause on [r, T]: sup difference quotient under 4x refinement
    for (double r : r_grid) {
        if (!(r > 0.0) || r >= T) continue;
        auto coarse = log_grid(r, T, samples);
        auto fine = log_grid(r, T, 4 * samples);
        for (size_t k = 1; k < fine.size(); ++k)
            if (!(g(fine[k]) > g(fine[k - 1]))) fail("monotone", fine[k], g(fine[k]));
        Quotient qc = max_quotient(g, coarse), qf = max_quotient(g, fine);
        LipschitzEstimate e;
        e.r = r;
        e.quotient = qc.value;
        e.quotient_fine = qf.value;
        e.growth = qc.value > 0 ? qf.value / qc.value : 1.0;
        e.witness_t = qf.at;
        rep.lipschitz.push_back(e);
        if (e.growth > 1.5) fail("lipschitz", qf.at, qf.value);
        else if (e.growth > 1.05) inconclusive = true;
    }
    if (rep.verdict != Verdict::not_in_F) rep.verdict = inconclusive ? Verdict::inconclusive : Verdict::in_F;
    return rep;
}

}  // namespace qsdome
