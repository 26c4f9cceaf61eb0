#pragma once

#include <functional>
#include <optional>

#include "bellman2d/types.hpp"

namespace bellman2d {

/// Smooth parametrized planar curve with derivatives up to third order.
///
/// Curves bound convex regions and are oriented so that the domain they
/// delimit lies to their left.  The parameter interval is open and may be
/// unbounded on either side.
struct BoundaryCurve {
    double param_lo = -kInf;
    double param_hi = kInf;

    std::function<Vec2(double)> eval;
    std::function<Vec2(double)> d1;
    std::function<Vec2(double)> d2;
    std::function<Vec2(double)> d3;

    /// Recovers the parameter of a point known to lie on the curve.
    std::function<double(const Vec2&)> param_of_point;

    /// True when the delimited domain lies to the left of the forward
    /// tangent.  All built-in constructors produce left-oriented curves.
    bool domain_on_left = true;

    bool contains_param(double t) const { return t > param_lo && t < param_hi; }

    /// Clamps a parameter into the open interval with a small interior margin.
    double clamp_param(double t, double margin = 1e-9) const;
};

/// Result of the finite-difference derivative consistency check.
struct DerivativeCheck {
    double max_d1_error = 0.0;
    double max_d2_error = 0.0;
    double max_d3_error = 0.0;
    bool passed = false;
};

/// Compares the supplied derivative callbacks against central differences of
/// the lower-order ones on a sampled parameter window.
DerivativeCheck check_derivatives(const BoundaryCurve& curve, double t_lo, double t_hi,
                                  int samples = 64, double tol = 1e-8);

/// Convex planar region described by a level function.
///
/// The level is positive strictly inside the region, zero on its boundary and
/// negative outside; no normalization is assumed beyond sign.
struct ConvexRegion {
    std::function<double(const Vec2&)> level;

    RegionSide classify(const Vec2& x, double tol = 1e-12) const {
        const double v = level(x);
        if (v > tol) return RegionSide::Inside;
        if (v < -tol) return RegionSide::Outside;
        return RegionSide::Boundary;
    }
};

} // namespace bellman2d
