#pragma once

#include <map>
#include <string>
#include <vector>

#include "bellman2d/curve.hpp"

namespace bellman2d {

/// Annular domain: closure of (outer region minus inner region).
///
/// Both bounding regions are convex and open, the inner one strictly inside
/// the outer.  Points of the domain avoid the open inner region and lie in
/// the closed outer one; the inner boundary itself belongs to the domain.
struct Domain {
    std::string name;

    /// Builder parameters (epsilon, p1, p2, Q, sigma, ...), kept for
    /// reporting and for data pullbacks that need the parametrization.
    std::map<std::string, double> meta;

    BoundaryCurve outer;
    BoundaryCurve inner;
    ConvexRegion outer_region;
    ConvexRegion inner_region;

    /// True when every vertical line meets the domain in at most one segment.
    /// Column-structured meshing requires it.
    bool vertically_convex = false;

    /// Level-function tolerance treated as "on the boundary".
    double boundary_tol = 1e-12;

    RegionSide outer_side(const Vec2& x) const { return outer_region.classify(x, boundary_tol); }
    RegionSide inner_side(const Vec2& x) const { return inner_region.classify(x, boundary_tol); }

    /// Membership in the closed annulus.
    bool contains(const Vec2& x) const {
        return outer_side(x) != RegionSide::Outside && inner_side(x) != RegionSide::Inside;
    }
};

/// Checks that the segment [p, q] stays inside the domain: every sample lies
/// in the closed outer region and no sample lies strictly inside the inner
/// region.  Sampling-limited: thin violations between samples are not seen.
bool segment_in_domain(const Domain& dom, const Vec2& p, const Vec2& q, int samples = 64);

/// How a clipped ray terminated.
enum class RayEnd {
    OuterBoundary, ///< reached the outer boundary; `boundary_param` is set
    InnerBlocked,  ///< stopped against the inner region (endpoint on its boundary)
    Capped         ///< stopped by the caller-imposed length cap
};

struct RayClip {
    double t = 0.0; ///< admissible length along the direction
    RayEnd end = RayEnd::Capped;
    Vec2 endpoint = Vec2::Zero();
    double boundary_param = 0.0; ///< outer-curve parameter when end == OuterBoundary
};

/// Maximal admissible extent from `x` along unit direction `dir`:
/// sup { t : [x, x + t dir] stays in the domain }, capped at `t_max`.
/// Marches with step ~`step` and refines the terminal point by bisection.
RayClip max_extent(const Domain& dom, const Vec2& x, const Vec2& dir, double t_max,
                   double step = 0.02);

/// Admissible segment directions through `x` that graze the inner region:
/// the two tangent directions from `x` to it, or the inner-boundary tangent
/// itself when `x` lies on that boundary.  Unit vectors.
std::vector<Vec2> graze_directions(const Domain& dom, const Vec2& x);

} // namespace bellman2d
