#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qsdome/curve.hpp"
#include "qsdome/gauges.hpp"
#include "qsdome/mesh.hpp"

namespace qsdome {

enum class ProbeKind { llc1, llc2, regularity };
std::string to_string(ProbeKind k);

// Two graph points that are not connected at `lambda` (the largest infeasible grid value).
struct LlcWitness {
    Vec3 a;
    Vec3 b;
    double lambda = 1.0;
};

struct ProbeSample {
    uint32_t center_vertex = 0;
    Vec3 center;
    double r = 0.0;
    double value = 0.0;  // minimal feasible lambda, or area / r^2; +inf when no grid lambda works
    bool feasible = true;
    std::optional<LlcWitness> witness;
};

struct ProbeReport {
    ProbeKind kind = ProbeKind::llc1;
    std::vector<double> lambda_grid;
    std::vector<ProbeSample> samples;
    double max_lambda = 1.0;
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    bool all_feasible = true;

    // Max lambda over the samples at radius r (exact match).
    double max_lambda_at(double r) const;
};

std::vector<double> default_lambda_grid();

struct LlcOptions {
    std::vector<double> lambda_grid = default_lambda_grid();
    // Edges within 2r of the center are split into pieces no longer than r / subdivision.
    double subdivision = 10.0;
};

// Vertex indices ordered by quantiles of |z| with a quadratic bias toward the equator.
std::vector<uint32_t> default_centers(const SurfaceMesh& mesh, size_t count = 64);
// Dyadic radii from hi down to lo (at most `count`); hi <= 0 means half the bounding-box diagonal,
// lo <= 0 means 10 median edge lengths.
std::vector<double> default_radii(const SurfaceMesh& mesh, size_t count = 7, double lo = 0.0, double hi = 0.0);

// LLC1: all graph points of B(x,r) joined inside B(x, lambda r). LLC2: all graph points outside B(x,r)
// joined outside B(x, r/lambda). Throws std::invalid_argument on a disconnected mesh.
ProbeReport llc_probe(const SurfaceMesh& mesh, const std::vector<uint32_t>& centers, const std::vector<double>& radii,
                      ProbeKind kind, const LlcOptions& opt = {});

// Re-tests one pair in the same subdivided graph.
bool llc_pair_connected(const SurfaceMesh& mesh, Vec3 center, double r, double lambda, ProbeKind kind, Vec3 a, Vec3 b,
                        const LlcOptions& opt = {});

// Area of mesh within open balls; triangles in a bounding-volume hierarchy.
class BallAreaIndex {
public:
    explicit BallAreaIndex(const SurfaceMesh& mesh);
    ~BallAreaIndex();
    BallAreaIndex(BallAreaIndex&&) noexcept;
    BallAreaIndex& operator=(BallAreaIndex&&) noexcept;
    double area(Vec3 center, double r) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Requires a closed mesh (std::invalid_argument otherwise) and radii within [10 median edge, bbox diagonal].
ProbeReport regularity_probe(const SurfaceMesh& mesh, const std::vector<uint32_t>& centers,
                             const std::vector<double>& radii);

struct NecessityReport {
    double C_hat = 0.0;       // two-point constant of the curve
    double lambda_hat = 1.0;  // max over LLC1 and LLC2 samples
    double bound = 0.0;       // 1.5 * 32 * lambda_hat^2
    bool holds = false;
    ProbeReport llc1;
    ProbeReport llc2;
};

NecessityReport necessity_check(const JordanCurve& curve, const Gauge& gauge, size_t resolution, size_t centers = 32,
                                size_t radii = 4);

}  // namespace qsdome
