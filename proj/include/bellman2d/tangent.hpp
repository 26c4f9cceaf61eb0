#pragma once

#include <utility>

#include "bellman2d/domain.hpp"

namespace bellman2d {

enum class TangentSide { Left, Right };

/// Tangent segment from a point of the outer boundary to the inner region.
///
/// The direction runs from the source point to the touch point.  Among the
/// two tangents from a boundary point, the left one makes the smaller CCW
/// angle with the forward tangent of the outer curve.
struct Tangent {
    double source_param = 0.0; ///< outer-curve parameter of the source point
    double touch_param = 0.0;  ///< inner-curve parameter of the tangency point
    Vec2 source = Vec2::Zero();
    Vec2 touch = Vec2::Zero();
    TangentSide side = TangentSide::Right;

    double length() const { return (touch - source).norm(); }
    Vec2 direction() const { return (touch - source).normalized(); }
    /// Oriented angle of the tangent direction against (1, 0), in (-pi, pi].
    double angle() const {
        const Vec2 d = touch - source;
        return std::atan2(d.y(), d.x());
    }
};

/// Tangent from the outer-boundary point g(u) to the inner region.
/// Throws NoTangent if the point lies in the closed inner region or the
/// tangency search fails.
Tangent tangent(const Domain& dom, double u, TangentSide side);

/// Same construction from an arbitrary point outside the closed inner region
/// (used by interior-point machinery; `source_param` is meaningless then and
/// left at 0, the left/right naming follows the given reference direction).
Tangent tangent_from_point(const Domain& dom, const Vec2& p, const Vec2& reference_dir,
                           TangentSide side);

/// Both tangent lengths seen from the inner-boundary point h(s): distances
/// from h(s) to the two intersections of the tangent line at h(s) with the
/// outer boundary.  `first` is the left tangent length, `second` the right.
std::pair<double, double> tangent_lengths_at_inner_param(const Domain& dom, double s);

} // namespace bellman2d
