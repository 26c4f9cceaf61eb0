#include "bellman2d/domain.hpp"

#include <cmath>

#include "bellman2d/tangent.hpp"

namespace bellman2d {

bool segment_in_domain(const Domain& dom, const Vec2& p, const Vec2& q, int samples) {
    for (int i = 0; i <= samples; ++i) {
        const double s = static_cast<double>(i) / samples;
        const Vec2 x = (1.0 - s) * p + s * q;
        if (dom.outer_side(x) == RegionSide::Outside) return false;
        if (dom.inner_side(x) == RegionSide::Inside) return false;
    }
    return true;
}

RayClip max_extent(const Domain& dom, const Vec2& x, const Vec2& dir, double t_max,
                   double step) {
    RayClip out;
    const Vec2 e = dir.normalized();
    auto point_ok = [&](double t) {
        const Vec2 y = x + t * e;
        return dom.outer_side(y) != RegionSide::Outside &&
               dom.inner_side(y) != RegionSide::Inside;
    };

    if (!point_ok(0.0)) {
        out.endpoint = x;
        return out;
    }

    double t_ok = 0.0;
    double t_bad = -1.0;
    for (double t = step; t <= t_max + 0.5 * step; t += step) {
        const double tc = std::min(t, t_max);
        if (point_ok(tc)) {
            t_ok = tc;
            if (tc >= t_max) break;
        } else {
            t_bad = tc;
            break;
        }
    }

    if (t_bad < 0.0) {
        out.t = t_max;
        out.end = RayEnd::Capped;
        out.endpoint = x + t_max * e;
        return out;
    }

    const double t_march = t_ok; // last coarse point, strictly clear of the fence
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (t_ok + t_bad);
        if (mid == t_ok || mid == t_bad) break;
        (point_ok(mid) ? t_ok : t_bad) = mid;
    }

    // The refined violating point decides which boundary terminated the ray.
    const bool outer_term = dom.outer_side(x + t_bad * e) == RegionSide::Outside;

    // The tolerance-banded bisection above parks the endpoint anywhere inside
    // the +-tol band, possibly past the exact boundary; nailing it onto the
    // zero level keeps derived quantities (boundary parameters, averages of
    // grazing chords) on the admissible side of the band.
    auto strictly_ok = [&](double t) {
        const Vec2 y = x + t * e;
        return outer_term ? dom.outer_region.level(y) >= 0.0
                          : dom.inner_region.level(y) <= 0.0;
    };
    if (!strictly_ok(t_ok)) {
        // bracket from the last coarse point, or from the ray origin when the
        // march itself already sits on the wrong side of the exact level
        double lo = strictly_ok(t_march) ? t_march : 0.0;
        if (strictly_ok(lo)) {
            double hi = t_ok;
            for (int i = 0; i < 60; ++i) {
                const double mid = 0.5 * (lo + hi);
                if (mid == lo || mid == hi) break;
                (strictly_ok(mid) ? lo : hi) = mid;
            }
            t_ok = lo;
        }
    }

    out.t = t_ok;
    out.endpoint = x + t_ok * e;
    if (outer_term) {
        out.end = RayEnd::OuterBoundary;
        out.boundary_param = dom.outer.param_of_point(out.endpoint);
    } else {
        out.end = RayEnd::InnerBlocked;
    }
    return out;
}

std::vector<Vec2> graze_directions(const Domain& dom, const Vec2& x) {
    std::vector<Vec2> dirs;
    if (dom.inner_side(x) == RegionSide::Inside) return dirs;
    if (dom.inner_side(x) == RegionSide::Boundary) {
        const double s = dom.inner.param_of_point(x);
        const Vec2 t = dom.inner.d1(s).normalized();
        dirs.push_back(t);
        dirs.push_back(-t);
        return dirs;
    }
    const Vec2 ref(1.0, 0.0);
    for (TangentSide side : {TangentSide::Left, TangentSide::Right}) {
        try {
            const Tangent tan = tangent_from_point(dom, x, ref, side);
            dirs.push_back(tan.direction());
        } catch (const NoTangent&) {
        }
    }
    return dirs;
}

} // namespace bellman2d
