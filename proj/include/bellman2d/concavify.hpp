#pragma once

#include "bellman2d/mesh.hpp"
#include "bellman2d/presets.hpp"

namespace bellman2d {

/// Node-indexed scalar field with a ceiling cap standing in for +infinity.
struct ScalarField {
    std::vector<double> values;
    double ceiling = 1e12;
    std::vector<uint8_t> pinned; ///< value hit the ceiling cap

    double operator[](int i) const { return values[i]; }
};

enum class SweepMode { GaussSeidel, Jacobi };

struct SweepOptions {
    int max_sweeps = 4000;
    double tolerance = 1e-9;
    SweepMode mode = SweepMode::GaussSeidel;
    double ceiling = 1e12;
};

struct SweepInfo {
    int sweeps = 0;
    double final_delta = 0.0;
    bool converged = false;
    int pinned_count = 0;
    double data_floor = 0.0; ///< interior initialization value (inf of data)
};

struct MajorantResult {
    ScalarField field;
    SweepInfo info;
};

/// Least field dominating the boundary data and stable under the raise
/// operator: each node is raised to the best convex combination of the two
/// endpoint values along every precomputed segment through it (endpoint
/// values by bilinear column interpolation of the field, or the exact data
/// value where a segment end reaches the outer boundary).  Monotone from
/// below; non-convergence is flagged in the info, not thrown.
MajorantResult minimal_concave_majorant(const Mesh& mesh, const BoundaryData& data,
                                        const SweepOptions& opts = {});

/// Largest one-step raise still available to the field (0 at a fixed point).
double local_concavity_violation(const Mesh& mesh, const BoundaryData& data,
                                 const ScalarField& field, double ceiling = 1e12);

/// Field value at an arbitrary domain point: vertical interpolation on the
/// two bracketing columns blended linearly in x1.
double interpolate(const Mesh& mesh, const ScalarField& field, const Vec2& p);

} // namespace bellman2d
