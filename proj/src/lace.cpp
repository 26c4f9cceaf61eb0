#include "bellman2d/lace.hpp"

#include <cmath>

namespace bellman2d {

Vec3 LiftedCurve::eval(double t) const {
    const Vec2 g = domain->outer.eval(t);
    return Vec3(g.x(), g.y(), data.value(t));
}

Vec3 LiftedCurve::d1(double t) const {
    const Vec2 g = domain->outer.d1(t);
    return Vec3(g.x(), g.y(), data.d1(t));
}

Vec3 LiftedCurve::d2(double t) const {
    const Vec2 g = domain->outer.d2(t);
    return Vec3(g.x(), g.y(), data.d2(t));
}

Vec3 LiftedCurve::d3(double t) const {
    const Vec2 g = domain->outer.d3(t);
    return Vec3(g.x(), g.y(), data.d3(t));
}

double torsion_determinant(const LiftedCurve& curve, double t) {
    Mat3 m;
    m.row(0) = curve.d1(t);
    m.row(1) = curve.d2(t);
    m.row(2) = curve.d3(t);
    return m.determinant();
}

int torsion_sign(const LiftedCurve& curve, double t, double tol) {
    const double det = torsion_determinant(curve, t);
    const Vec3 v1 = curve.d1(t);
    const double binormal = v1.cross(curve.d2(t)).norm();
    const double scale = v1.norm() * v1.norm() * v1.norm() * binormal;
    if (scale <= 0.0) return 0;
    const double normalized = det / scale;
    if (std::abs(normalized) < tol) return 0;
    return normalized > 0.0 ? 1 : -1;
}

std::vector<SignChange> torsion_sign_changes(const LiftedCurve& curve, double t_lo, double t_hi,
                                             int grid, double loc_tol, int max_changes) {
    std::vector<SignChange> changes;
    double prev_t = t_lo;
    int prev_sign = torsion_sign(curve, t_lo);
    for (int i = 1; i <= grid; ++i) {
        const double t = t_lo + (t_hi - t_lo) * i / grid;
        const int s = torsion_sign(curve, t);
        if (s == 0) continue; // tolerance band; keep the last firm sign
        if (prev_sign != 0 && s != prev_sign) {
            // refine the determinant root inside [prev_t, t]
            double lo = prev_t, hi = t;
            double f_lo = torsion_determinant(curve, lo);
            while (hi - lo > loc_tol) {
                const double mid = 0.5 * (lo + hi);
                const double f_mid = torsion_determinant(curve, mid);
                if ((f_mid >= 0.0) == (f_lo >= 0.0)) {
                    lo = mid;
                    f_lo = f_mid;
                } else {
                    hi = mid;
                }
            }
            changes.push_back({0.5 * (lo + hi), prev_sign, s});
            if (static_cast<int>(changes.size()) > max_changes)
                throw TooManyChanges("torsion_sign_changes: more than " +
                                     std::to_string(max_changes) + " sign changes");
        }
        prev_sign = s;
        prev_t = t;
    }
    return changes;
}

double cup_equation_residual(const LiftedCurve& curve, double a, double b) {
    Mat3 m;
    m.row(0) = curve.d1(a);
    m.row(1) = curve.d1(b);
    m.row(2) = curve.eval(b) - curve.eval(a);
    return m.determinant();
}

namespace {

Vec3 principal_normal(const LiftedCurve& curve, double t) {
    const Vec3 v1 = curve.d1(t);
    const Vec3 v2 = curve.d2(t);
    const Vec3 n = v1.cross(v2).cross(v1);
    const double len = n.norm();
    if (len < 1e-14)
        throw CurvatureDegenerate("principal normal undefined: |gamma' x gamma''| ~ 0");
    return n / len;
}

double end_product(const LiftedCurve& curve, double here, double other) {
    Mat3 m;
    m.row(0) = curve.d1(here);
    m.row(1) = curve.eval(other) - curve.eval(here);
    m.row(2) = principal_normal(curve, here);
    return m.determinant();
}

} // namespace

std::pair<double, double> chord_differential_inequalities(const LiftedCurve& curve, double a,
                                                          double b) {
    return {end_product(curve, a, b), end_product(curve, b, a)};
}

namespace {

// One corrector solve: find b > floor with residual(a, b) = 0, Newton with
// derivative det[gamma'(a); gamma''(b); gamma(b)-gamma(a)] and a bisection
// fallback on failure.  Returns false when no root is found.
bool solve_b(const LiftedCurve& curve, double a, double floor, double& b, double newton_tol) {
    double x = b;
    for (int iter = 0; iter < 80; ++iter) {
        const double r = cup_equation_residual(curve, a, x);
        Mat3 m;
        m.row(0) = curve.d1(a);
        m.row(1) = curve.d2(x);
        m.row(2) = curve.eval(x) - curve.eval(a);
        const double dr = m.determinant();
        if (dr == 0.0) break;
        double step = r / dr;
        if (!std::isfinite(step)) break;
        double next = x - step;
        if (next <= floor) next = 0.5 * (x + floor);
        if (std::abs(next - x) > 1.0) next = x + (next > x ? 1.0 : -1.0);
        const bool done = std::abs(next - x) < 1e-14 * (1.0 + std::abs(x));
        x = next;
        if (done) {
            const double scale = 1.0 + std::abs(dr) * (1.0 + std::abs(x - a));
            if (std::abs(cup_equation_residual(curve, a, x)) <= newton_tol * scale) {
                b = x;
                return true;
            }
            break;
        }
    }

    // expanding bracket + bisection
    const double width = std::max(1e-6, std::abs(b - floor));
    double lo = floor + 1e-9, hi = floor + width;
    double f_lo = cup_equation_residual(curve, a, lo);
    for (int grow = 0; grow < 64; ++grow) {
        const double f_hi = cup_equation_residual(curve, a, hi);
        if ((f_lo >= 0.0) != (f_hi >= 0.0)) {
            for (int i = 0; i < 200; ++i) {
                const double mid = 0.5 * (lo + hi);
                const double f_mid = cup_equation_residual(curve, a, mid);
                if ((f_mid >= 0.0) == (f_lo >= 0.0)) {
                    lo = mid;
                    f_lo = f_mid;
                } else {
                    hi = mid;
                }
            }
            b = 0.5 * (lo + hi);
            return true;
        }
        lo = hi;
        f_lo = f_hi;
        hi = floor + width * std::ldexp(1.0, grow + 1);
    }
    return false;
}

} // namespace

std::vector<Chord> solve_cup_chords(const LiftedCurve& curve, const SignChange& origin,
                                    const CupChordOptions& opts) {
    std::vector<Chord> family;
    if (!origin.is_cup_candidate()) return family;

    const Domain& dom = *curve.domain;
    const double t0 = origin.location;
    double step = opts.step;
    double a = t0;
    double b_guess = t0;
    bool first = true;

    while (static_cast<int>(family.size()) < opts.max_chords) {
        const double a_next = a - step;
        double b = std::max(b_guess, t0 + step);
        if (!solve_b(curve, a_next, t0, b, opts.newton_tol)) {
            step *= 0.5;
            if (step < opts.min_step)
                throw ContinuationStall("solve_cup_chords: corrector stalled at a = " +
                                        std::to_string(a));
            continue;
        }

        Chord chord;
        chord.a = a_next;
        chord.b = b;
        chord.residual = cup_equation_residual(curve, a_next, b);
        const auto [ia, ib] = chord_differential_inequalities(curve, a_next, b);
        chord.ineq_a = ia;
        chord.ineq_b = ib;
        chord.in_domain =
            segment_in_domain(dom, dom.outer.eval(a_next), dom.outer.eval(b));

        if (!chord.in_domain) {
            if (first)
                throw ChordExitsDomain("solve_cup_chords: seed chord leaves the domain");
            break; // family ends at the domain boundary
        }
        family.push_back(chord);
        first = false;
        a = a_next;
        b_guess = b;
        step = opts.step;
    }
    return family;
}

} // namespace bellman2d
