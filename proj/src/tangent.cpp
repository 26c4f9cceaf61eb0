#include "bellman2d/tangent.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace bellman2d {

namespace {

// Normalized tangency function: sine of the angle between the chord from p
// to h(s) and the curve tangent at s.  Zero exactly at tangency parameters.
double tangency_residual(const BoundaryCurve& inner, const Vec2& p, double s) {
    const Vec2 d = inner.eval(s) - p;
    const Vec2 t = inner.d1(s);
    const double denom = d.norm() * t.norm();
    if (denom == 0.0) return 0.0;
    return cross2(d, t) / denom;
}

double bisect_root(const BoundaryCurve& inner, const Vec2& p, double a, double b) {
    double fa = tangency_residual(inner, p, a);
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (a + b);
        if (mid == a || mid == b) break;
        const double fm = tangency_residual(inner, p, mid);
        if ((fa <= 0.0) == (fm <= 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

// Scans an expanding parameter window around a heuristic seed for sign
// changes of the tangency residual; returns the refined roots (expect two
// for a point strictly outside the closed inner region).
std::vector<double> tangency_roots(const BoundaryCurve& inner, const Vec2& p) {
    const double seed = inner.clamp_param(inner.param_of_point(p), 1e-7);
    for (double width = 2.0; width <= 256.0; width *= 2.0) {
        const double lo = inner.clamp_param(seed - width, 1e-7);
        const double hi = inner.clamp_param(seed + width, 1e-7);
        const int n = 512;
        std::vector<double> roots;
        double prev_s = lo;
        double prev_f = tangency_residual(inner, p, lo);
        for (int i = 1; i <= n; ++i) {
            const double s = lo + (hi - lo) * i / n;
            const double f = tangency_residual(inner, p, s);
            if ((prev_f <= 0.0) != (f <= 0.0)) roots.push_back(bisect_root(inner, p, prev_s, s));
            prev_s = s;
            prev_f = f;
        }
        if (roots.size() >= 2) {
            // Keep the two roots closest to the seed: a strictly convex curve
            // admits exactly two tangency points, extra sign flips are noise.
            std::sort(roots.begin(), roots.end(), [&](double x, double y) {
                return std::abs(x - seed) < std::abs(y - seed);
            });
            roots.resize(2);
            std::sort(roots.begin(), roots.end());
            return roots;
        }
        const bool window_maxed = lo <= inner.clamp_param(-kInf, 1e-7) + 1e-12 &&
                                  hi >= inner.clamp_param(kInf, 1e-7) - 1e-12;
        if (window_maxed) break;
    }
    throw NoTangent("tangency search found no root pair");
}

Tangent classify_pair(const BoundaryCurve& inner, const Vec2& p, const Vec2& reference_dir,
                      TangentSide side, const std::vector<double>& roots) {
    const Vec2 d0 = inner.eval(roots[0]) - p;
    const Vec2 d1 = inner.eval(roots[1]) - p;
    if (d0.norm() < 1e-14 || d1.norm() < 1e-14)
        throw NoTangent("degenerate zero-length tangent");
    // The left tangent makes the smaller CCW angle with the reference
    // direction (the forward tangent of the outer curve at the source).
    const double a0 = ccw_angle(reference_dir, d0);
    const double a1 = ccw_angle(reference_dir, d1);
    const int left_idx = a0 <= a1 ? 0 : 1;
    const int idx = side == TangentSide::Left ? left_idx : 1 - left_idx;

    Tangent out;
    out.touch_param = roots[idx];
    out.source = p;
    out.touch = inner.eval(roots[idx]);
    out.side = side;
    return out;
}

} // namespace

Tangent tangent(const Domain& dom, double u, TangentSide side) {
    const Vec2 p = dom.outer.eval(u);
    if (dom.inner_side(p) != RegionSide::Outside)
        throw NoTangent("source point not outside the closed inner region");
    const std::vector<double> roots = tangency_roots(dom.inner, p);
    Tangent out = classify_pair(dom.inner, p, dom.outer.d1(u), side, roots);
    out.source_param = u;
    return out;
}

Tangent tangent_from_point(const Domain& dom, const Vec2& p, const Vec2& reference_dir,
                           TangentSide side) {
    if (dom.inner_side(p) != RegionSide::Outside)
        throw NoTangent("source point not outside the closed inner region");
    const std::vector<double> roots = tangency_roots(dom.inner, p);
    return classify_pair(dom.inner, p, reference_dir, side, roots);
}

std::pair<double, double> tangent_lengths_at_inner_param(const Domain& dom, double s) {
    const Vec2 h = dom.inner.eval(s);
    const Vec2 e = dom.inner.d1(s).normalized();

    auto line_crossing = [&](double sign) {
        double r_in = 1e-9;
        double r = 1e-6;
        while (dom.outer_region.classify(h + sign * r * e) != RegionSide::Outside) {
            r_in = r;
            r *= 1.6;
            if (r > 1e8) throw QuadratureFailure("tangent line never leaves the outer region");
        }
        double lo = r_in, hi = r;
        for (int i = 0; i < 80; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            if (dom.outer_region.classify(h + sign * mid * e) == RegionSide::Outside)
                hi = mid;
            else
                lo = mid;
        }
        return 0.5 * (lo + hi);
    };

    const double right = line_crossing(+1.0); // forward along the inner tangent
    const double left = line_crossing(-1.0);
    return {left, right};
}

} // namespace bellman2d
