#pragma once

#include <complex>
#include <string>
#include <vector>

#include "qsdome/geometry.hpp"

namespace qsdome {

using cplx = std::complex<double>;

enum class MapKind { identity, quadratic, moebius, affine, composition };

// Univalent map of the unit disk with closed-form f and f'.
class ConformalMap {
public:
    static ConformalMap identity();
    // z + c z^2, |c| <= 1/2.
    static ConformalMap quadratic(cplx c);
    // (z + a) / (1 + conj(a) z), |a| < 1.
    static ConformalMap moebius(cplx a);
    // s z + b, s != 0.
    static ConformalMap affine(cplx s, cplx b);
    // Applies maps[0] first. Apart from trailing affine maps, every map but the last must be a disk
// automorphism (identity or moebius).
    static ConformalMap compose(std::vector<ConformalMap> maps);
    // "identity", "quadratic:0.3", "quadratic:0.2,0.1", "moebius:0.5", "affine:sre,sim,bre,bim",
    // and compositions joined by '>' ("moebius:0.5>quadratic:0.2").
    static ConformalMap parse(const std::string& spec);

    cplx f(cplx z) const;
    cplx df(cplx z) const;
    MapKind kind() const { return kind_; }
    std::string describe() const;

private:
    MapKind kind_ = MapKind::identity;
    cplx p_{0.0, 0.0};
    cplx q_{0.0, 0.0};
    std::vector<ConformalMap> parts_;
};

// Named maps used by the verification suites.
std::vector<ConformalMap> map_registry();

// dist(f(x), f(unit circle)) from a 4096-point angle grid refined by golden-section search.
// Throws std::domain_error for |x| >= 1.
double boundary_distance(const ConformalMap& map, cplx x);

// Deterministic points with |x| <= rmax, denser toward the circle.
std::vector<cplx> koebe_samples(size_t n = 1000, double rmax = 0.99);

struct KoebeViolation {
    cplx x;
    double lower = 0.0;  // dist / (1 - |x|^2)
    double derivative = 0.0;
    double upper = 0.0;  // 4 dist / (1 - |x|^2)
};

struct KoebeReport {
    std::string map;
    size_t samples = 0;
    double min_lower_margin = 0.0;  // min |f'| / lower
    double min_upper_margin = 0.0;  // min upper / |f'|
    std::vector<KoebeViolation> violations;
    bool passed() const { return violations.empty(); }
};

KoebeReport koebe_check(const ConformalMap& map, const std::vector<cplx>& samples, double tol = 1e-9);

// (f(x), D_x z) with D_x = dist(f(x), boundary) / (1 - |x|). Throws std::domain_error unless |z| < 1 - |x|.
Vec3 dome_map(const ConformalMap& map, Vec3 p);

// sigma_max / sigma_min of the central-difference Jacobian of dome_map at p with step h.
double linear_dilatation(const ConformalMap& map, Vec3 p, double h);

struct WhitneyBall {
    cplx base;
    double radius = 0.0;  // (1 - |base|) / 2
    double value = 0.0;   // per-ball measured quantity
    double local = 0.0;   // dilatation_estimate only: max pointwise linear dilatation of F
};

struct DistortionReport {
    std::string map;
    std::vector<WhitneyBall> balls;
    double sup = 0.0;         // with 2N samples per ball
    double sup_half = 0.0;    // with the first N samples
    double local_sup = 0.0;   // max of WhitneyBall::local
    bool stable() const { return sup <= 1.25 * sup_half + 1e-12; }
};

// sup |D_x1 - D_x2| (1 - |x0|) / (|f'(x0)| |x1 - x2|) over pairs in each Whitney ball, separation >= radius/8.
DistortionReport dd_check(const ConformalMap& map, const std::vector<cplx>& bases, size_t n = 64);

// Per 3D Whitney ball around (x0, 0): max/min of |F(p) - F(q)| / |p - q| over sampled pairs, and the
// largest singular-value ratio of the finite-difference Jacobian of F at the first N sample points.
DistortionReport dilatation_estimate(const ConformalMap& map, const std::vector<cplx>& bases, size_t n = 64);

}  // namespace qsdome
