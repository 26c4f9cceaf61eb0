#include "bellman2d/curve.hpp"

#include <algorithm>
#include <cmath>

namespace bellman2d {

double ccw_angle(const Vec2& a, const Vec2& b) {
    double ang = std::atan2(cross2(a, b), a.dot(b));
    if (ang < 0.0) ang += 2.0 * M_PI;
    return ang;
}

double BoundaryCurve::clamp_param(double t, double margin) const {
    double lo = param_lo, hi = param_hi;
    if (std::isfinite(lo)) lo += margin;
    if (std::isfinite(hi)) hi -= margin;
    return std::clamp(t, lo, hi);
}

DerivativeCheck check_derivatives(const BoundaryCurve& curve, double t_lo, double t_hi,
                                  int samples, double tol) {
    DerivativeCheck out;
    const double delta = 1e-5;
    for (int i = 0; i < samples; ++i) {
        const double t = t_lo + (t_hi - t_lo) * (i + 0.5) / samples;
        if (!curve.contains_param(t - delta) || !curve.contains_param(t + delta)) continue;
        const Vec2 fd1 = (curve.eval(t + delta) - curve.eval(t - delta)) / (2.0 * delta);
        const Vec2 fd2 = (curve.d1(t + delta) - curve.d1(t - delta)) / (2.0 * delta);
        const Vec2 fd3 = (curve.d2(t + delta) - curve.d2(t - delta)) / (2.0 * delta);
        const double scale1 = std::max(1.0, curve.d1(t).norm());
        const double scale2 = std::max(1.0, curve.d2(t).norm());
        const double scale3 = std::max(1.0, curve.d3(t).norm());
        out.max_d1_error = std::max(out.max_d1_error, (fd1 - curve.d1(t)).norm() / scale1);
        out.max_d2_error = std::max(out.max_d2_error, (fd2 - curve.d2(t)).norm() / scale2);
        out.max_d3_error = std::max(out.max_d3_error, (fd3 - curve.d3(t)).norm() / scale3);
    }
    out.passed = out.max_d1_error <= tol && out.max_d2_error <= tol && out.max_d3_error <= tol;
    return out;
}

} // namespace bellman2d
