#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsdome/curve.hpp"
#include "qsdome/gauges.hpp"
#include "qsdome/mesh.hpp"
#include "qsdome/triangulation.hpp"

namespace qsdome {

// Lift of a planar triangulation to the two sheets z = +-phi(d); boundary vertices are shared.
SurfaceMesh lift_planar_mesh(const PlanarMesh& planar, const Gauge& gauge);

SurfaceMesh build_surface(const JordanCurve& curve, const Gauge& gauge, size_t resolution);

// Pointwise lift (x, sign*phi(dist(x, boundary))). Throws std::domain_error for points outside the closed region.
std::vector<Vec3> lift(const JordanCurve& curve, const Gauge& gauge, const std::vector<Vec2>& polyline, int sign);

struct ConeRegion {
    double volume = 0.0;       // layer integration on the node lattice
    double mesh_volume = 0.0;  // enclosed volume of the identity-gauge surface
    SurfaceMesh mesh;
};

// K = {(x,z) : |z| < dist(x, boundary)}.
ConeRegion cone_region(const JordanCurve& curve, size_t resolution = 512);

using HeightFunction = std::function<double(Vec2)>;

// (x, z + h1(x)) above D, (x, z + h2(x)) below, identity elsewhere.
// Throws std::domain_error on the slit itself (z == 0 over the closed domain) and
// std::invalid_argument when h2(x) > h1(x).
Vec3 slit_complement_map(const JordanCurve& domain, const HeightFunction& h1, const HeightFunction& h2, Vec3 p);

struct BiLipschitzSample {
    double constant = 1.0;
    Vec3 witness_p;
    Vec3 witness_q;
    size_t pairs = 0;
};

// Local bi-Lipschitz constant over random pairs in the same open half-space, separation <= `scale`.
BiLipschitzSample slit_bilipschitz(const JordanCurve& domain, const HeightFunction& h1, const HeightFunction& h2,
                                   double scale, size_t pairs = 20000, uint64_t seed = 1);

// Solves t3 - t2 + phi(t3) - phi(t2) = (t1 - t2 + phi(t1) - phi(t2)) / 2.
double solve_t3(const Gauge& gauge, double t1, double t2);

class AdmissibilityError : public std::runtime_error {
public:
    AdmissibilityError(std::string clause, const std::string& what)
        : std::runtime_error(what), clause_(std::move(clause)) {}
    const std::string& clause() const { return clause_; }

private:
    std::string clause_;
};

struct AdmissibilityCheck {
    std::string clause;
    bool ok = false;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string detail;
};

struct SquarePiece {
    double t1 = 0.0, t2 = 0.0, t3 = 0.0;
    double C0 = 0.0;
    Vec2 px1, py1, px2, py2;
    Vec3 x1, y1, x2, y2;
    std::vector<Vec2> quad;  // planar boundary of Q, counterclockwise
    SurfaceMesh patch;       // upper-sheet lift of Q (open mesh)
    std::vector<Vec3> boundary_samples;
    Vec3 rough_center;
    double diameter = 0.0;  // of the lifted boundary samples
    double center_ratio_min = 0.0;  // min |z - w| / diam over boundary samples
    double center_ratio_max = 0.0;
    std::vector<AdmissibilityCheck> checks;
};

struct SquarePieceOptions {
    size_t resolution = 512;        // distance field for the level curves
    size_t patch_resolution = 192;  // grid across the quadrilateral
    double C0 = 0.0;                // <= 0: max two-point constant of the two level curves
};

// y1 sits at arc distance 2*half_width counterclockwise from x1 on the t1 level curve.
// Throws AdmissibilityError naming the violated clause.
SquarePiece square_piece(const JordanCurve& curve, const Gauge& gauge, double t1, double t2, Vec2 anchor,
                         double half_width, const SquarePieceOptions& opt = {});

struct PieceArea {
    double area = 0.0;
    double chord = 0.0;  // |x1 - y1|
    double ratio = 0.0;  // area / chord^2
    double C = 0.0;      // max(ratio, 1/ratio)
};

PieceArea square_piece_area(const SquarePiece& piece);

}  // namespace qsdome
