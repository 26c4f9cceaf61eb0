#pragma once

#include <functional>
#include <vector>

#include "bellman2d/types.hpp"

namespace bellman2d {

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1], generated
/// by Newton iteration on the Legendre recurrence (machine precision).
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    explicit GaussRule(int n);
};

/// Shared 10-point rule.
const GaussRule& gauss10();

/// Fixed-order Gauss-Legendre quadrature over [a, b].
double integrate_panel(const std::function<double(double)>& f, double a, double b);

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
    int evaluations = 0;
};

/// Adaptive quadrature over [a, b]: recursive interval halving with the
/// whole-vs-halves difference as the error estimate.  Tolerances follow the
/// absolute/relative contract; throws QuadratureFailure past the depth cap
/// only when the caller requests strict mode.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol = 1e-9, double rel_tol = 1e-7,
                                    int max_depth = 32, bool strict = false);

/// Cumulative antiderivative cache on a uniform panel grid: C(x) = int_x0^x f,
/// extended lazily in both directions, panel integrals by the shared rule.
/// Within-panel evaluation integrates from the nearest cached edge.
class CumulativeIntegral {
public:
    CumulativeIntegral(std::function<double(double)> f, double x0, double panel_width);

    double operator()(double x) const;

private:
    double edge_value(long idx) const;

    std::function<double(double)> f_;
    double x0_;
    double w_;
    // grown on demand; mutable because evaluation extends the cache
    mutable std::vector<double> fwd_{0.0};  // C(x0 + k w), k = 0..
    mutable std::vector<double> bwd_{0.0};  // C(x0 - k w), k = 0..
};

} // namespace bellman2d
