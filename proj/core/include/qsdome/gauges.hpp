#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qsdome {

enum class GaugeKind { power, identity, counterexample, staircase };

// Increasing homeomorphism of [0, inf) with phi(0) = 0.
class Gauge {
public:
    static Gauge power(double alpha);
    static Gauge identity();
    // 1 - sqrt(1 - t) on [0,1], t afterwards.
    static Gauge counterexample();
    // "power:0.5", "identity", "counterexample", "staircase:[[d,h],...]".
    static Gauge parse(const std::string& spec, double tail_slope = 1.0);

    double operator()(double t) const;
    GaugeKind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    const std::vector<std::pair<double, double>>& breakpoints() const { return pairs_; }
    double tail_slope() const { return tail_; }
    std::string describe() const;

private:
    friend Gauge build_staircase_gauge(std::vector<std::pair<double, double>> pairs, double tail_slope);
    GaugeKind kind_ = GaugeKind::identity;
    double alpha_ = 1.0;
    std::vector<std::pair<double, double>> pairs_;  // d strictly decreasing
    double tail_ = 1.0;
};

double eval(const Gauge& g, double t);

// Piecewise-linear gauge through (0,0) and every (d_n, h_n), slope tail_slope beyond d_1.
Gauge build_staircase_gauge(std::vector<std::pair<double, double>> pairs, double tail_slope);

enum class Verdict { in_F, not_in_F, inconclusive };
std::string to_string(Verdict v);

struct LipschitzEstimate {
    double r = 0.0;
    double quotient = 0.0;       // N samples
    double quotient_fine = 0.0;  // 4N samples
    double growth = 1.0;
    double witness_t = 0.0;
};

struct MembershipReport {
    double liminf_ratio_estimate = 0.0;
    double liminf_slope = 0.0;  // d log(phi(t)/t) / d log t over (delta*1e-6, delta]
    std::vector<LipschitzEstimate> lipschitz;
    Verdict verdict = Verdict::inconclusive;
    std::string violated_clause;
    double witness_t = 0.0;
    double witness_value = 0.0;
};

MembershipReport validate_membership(const Gauge& g, double delta = 1e-3,
                                     const std::vector<double>& r_grid = {1e-2, 1e-1, 1.0}, double T = 10.0,
                                     size_t samples = 100000);

}  // namespace qsdome
