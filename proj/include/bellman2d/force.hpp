#pragma once

#include <vector>

#include "bellman2d/lace.hpp"
#include "bellman2d/tangent.hpp"

namespace bellman2d {

struct ForceOptions {
    double first_truncation = 1.0; ///< initial tail length, doubled each sweep
    int max_doublings = 12;
    double tail_tol = 1e-8;        ///< convergence threshold between sweeps
    double panel_width = 0.05;     ///< quadrature panel size (scaled by epsilon-like data)
    double cos_tol = 1e-8;         ///< |cos alpha| below this is singular
    double curvature_tol = 1e-12;  ///< |g1' g2'' - g2' g1''| below this is degenerate
};

struct ForceValue {
    double value = 0.0;
    double tail_estimate = 0.0; ///< last truncation increment
    bool converged = false;
    double truncation = 0.0;    ///< tail length actually integrated
};

/// Damped tangency-weighted integral of the torsion determinant along the
/// outer boundary: side = Right integrates over tau in (-inf, t] with the
/// right-tangent length/angle, side = Left over [t, +inf) with the left ones.
/// The inner damping exponent is always taken from tau to t, so it is <= 0 on
/// the integration range and the damping factor is <= 1, exactly 1 at tau = t.
/// Throws SingularIntegrand / CurvatureDegenerate on the declared geometry
/// degeneracies.
ForceValue force_integral(const Domain& dom, const BoundaryData& data, double t,
                          TangentSide side, const ForceOptions& opts = {});

struct ForceProfile {
    std::vector<double> params;
    std::vector<ForceValue> values;
    std::vector<bool> ok;             ///< false where evaluation threw
    std::vector<std::string> errors;  ///< message per failed point
};

/// Force values over a parameter grid; per-point failures are isolated into
/// the ok/errors arrays instead of aborting the profile.
ForceProfile force_profile(const Domain& dom, const BoundaryData& data,
                           const std::vector<double>& grid, TangentSide side,
                           const ForceOptions& opts = {});

} // namespace bellman2d
