#include "bellman2d/quadrature.hpp"

#include <cmath>

namespace bellman2d {

GaussRule::GaussRule(int n) {
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev-angle initial guess, then Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

const GaussRule& gauss10() {
    static const GaussRule rule(10);
    return rule;
}

double integrate_panel(const std::function<double(double)>& f, double a, double b) {
    const GaussRule& rule = gauss10();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double sum = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

namespace {

void adapt(const std::function<double(double)>& f, double a, double b, double whole,
           double abs_tol, double rel_tol, int depth, QuadratureResult& out) {
    const double mid = 0.5 * (a + b);
    const double left = integrate_panel(f, a, mid);
    const double right = integrate_panel(f, mid, b);
    out.evaluations += 20;
    const double halves = left + right;
    const double err = std::abs(halves - whole);
    if (err <= abs_tol || err <= rel_tol * std::abs(halves)) {
        out.value += halves;
        out.error_estimate += err;
        return;
    }
    if (depth <= 0) {
        out.value += halves;
        out.error_estimate += err;
        out.converged = false;
        return;
    }
    adapt(f, a, mid, left, 0.5 * abs_tol, rel_tol, depth - 1, out);
    adapt(f, mid, b, right, 0.5 * abs_tol, rel_tol, depth - 1, out);
}

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, double rel_tol, int max_depth, bool strict) {
    QuadratureResult out;
    out.converged = true;
    if (a == b) return out;
    const double whole = integrate_panel(f, a, b);
    out.evaluations = 10;
    adapt(f, a, b, whole, abs_tol, rel_tol, max_depth, out);
    if (!out.converged && strict)
        throw QuadratureFailure("integrate_adaptive: depth cap reached with error " +
                                std::to_string(out.error_estimate));
    return out;
}

CumulativeIntegral::CumulativeIntegral(std::function<double(double)> f, double x0,
                                       double panel_width)
    : f_(std::move(f)), x0_(x0), w_(panel_width) {
    if (!(panel_width > 0.0))
        throw std::invalid_argument("CumulativeIntegral: panel width must be positive");
}

double CumulativeIntegral::edge_value(long idx) const {
    if (idx >= 0) {
        while (static_cast<long>(fwd_.size()) <= idx) {
            const long k = static_cast<long>(fwd_.size());
            fwd_.push_back(fwd_.back() +
                           integrate_panel(f_, x0_ + (k - 1) * w_, x0_ + k * w_));
        }
        return fwd_[idx];
    }
    const long k_need = -idx;
    while (static_cast<long>(bwd_.size()) <= k_need) {
        const long k = static_cast<long>(bwd_.size());
        bwd_.push_back(bwd_.back() -
                       integrate_panel(f_, x0_ - k * w_, x0_ - (k - 1) * w_));
    }
    return bwd_[k_need];
}

double CumulativeIntegral::operator()(double x) const {
    const double off = (x - x0_) / w_;
    const long idx = static_cast<long>(std::floor(off + 0.5)); // nearest edge
    const double edge_x = x0_ + idx * w_;
    double v = edge_value(idx);
    if (x != edge_x) v += integrate_panel(f_, edge_x, x);
    return v;
}

} // namespace bellman2d
