#include "bellman2d/force.hpp"

#include <cmath>

#include "bellman2d/quadrature.hpp"

namespace bellman2d {

namespace {

struct Integrand {
    const Domain& dom;
    const LiftedCurve& curve;
    TangentSide side;
    const ForceOptions& opts;

    // Horizontal reach of the side's tangent vector at sigma (= length times
    // the cosine of its angle); the damping exponent's density is g1'/this.
    double tangent_reach(double sigma) const {
        const Tangent tng = tangent(dom, sigma, side);
        const double reach = (tng.touch - tng.source).x();
        if (std::abs(reach) < opts.cos_tol * tng.length())
            throw SingularIntegrand("force: tangent nearly vertical at parameter " +
                                    std::to_string(sigma));
        return reach;
    }

    double damping_density(double sigma) const {
        return dom.outer.d1(sigma).x() / tangent_reach(sigma);
    }

    // W(tau) Delta(tau): tangency weight times the torsion determinant.
    double weighted_torsion(double tau) const {
        const Tangent tng = tangent(dom, tau, side);
        const Vec2 d = tng.touch - tng.source;
        if (std::abs(d.x()) < opts.cos_tol * d.norm())
            throw SingularIntegrand("force: tangent nearly vertical at parameter " +
                                    std::to_string(tau));
        const Vec2 g1 = dom.outer.d1(tau);
        const Vec2 g2 = dom.outer.d2(tau);
        const double curv = g1.x() * g2.y() - g1.y() * g2.x();
        if (std::abs(curv) < opts.curvature_tol)
            throw CurvatureDegenerate("force: boundary curvature degenerate at parameter " +
                                      std::to_string(tau));
        const double tan_alpha = d.y() / d.x();
        const double w = (tan_alpha * g1.x() - g1.y()) / (curv * curv);
        return w * torsion_determinant(curve, tau);
    }
};

} // namespace

ForceValue force_integral(const Domain& dom, const BoundaryData& data, double t,
                          TangentSide side, const ForceOptions& opts) {
    LiftedCurve curve{&dom, data};
    Integrand integrand{dom, curve, side, opts};

    // Cumulative damping exponent anchored at t: E(tau) = exp(-X(tau)) with
    // X(tau) = int_t^tau of the density, so the exponent always runs from tau
    // to t.
    CumulativeIntegral damping([&integrand](double s) { return integrand.damping_density(s); },
                               t, 0.25);
    auto full = [&](double tau) {
        return std::exp(-damping(tau)) * integrand.weighted_torsion(tau);
    };

    // lay panels away from t on the integration side
    const double dir = (side == TangentSide::Right) ? -1.0 : 1.0;
    auto segment = [&](double from_offset, double to_offset) {
        double acc = 0.0;
        double off = from_offset;
        while (off < to_offset) {
            const double next = std::min(to_offset, off + opts.panel_width);
            // orient the panel outward; flip sign for the right side so the
            // reported integral is over increasing tau
            const double piece = integrate_panel(full, t + dir * off, t + dir * next);
            acc += (side == TangentSide::Right) ? -piece : piece;
            off = next;
        }
        return acc;
    };

    ForceValue out;
    double tail_lo = 0.0, tail_hi = opts.first_truncation;
    for (int k = 0; k <= opts.max_doublings; ++k) {
        const double increment = segment(tail_lo, tail_hi);
        out.value += increment;
        out.tail_estimate = increment;
        out.truncation = tail_hi;
        if (!std::isfinite(out.value)) break;
        if (k > 0 && std::abs(increment) <= opts.tail_tol * std::max(1.0, std::abs(out.value))) {
            out.converged = true;
            break;
        }
        tail_lo = tail_hi;
        tail_hi *= 2.0;
    }
    return out;
}

ForceProfile force_profile(const Domain& dom, const BoundaryData& data,
                           const std::vector<double>& grid, TangentSide side,
                           const ForceOptions& opts) {
    ForceProfile profile;
    profile.params = grid;
    for (double t : grid) {
        try {
            profile.values.push_back(force_integral(dom, data, t, side, opts));
            profile.ok.push_back(true);
            profile.errors.emplace_back();
        } catch (const NumericError& e) {
            profile.values.push_back({});
            profile.ok.push_back(false);
            profile.errors.emplace_back(e.what());
        }
    }
    return profile;
}

} // namespace bellman2d
