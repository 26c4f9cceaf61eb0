#pragma once

#include <vector>

#include "bellman2d/domain.hpp"
#include "bellman2d/presets.hpp"

namespace bellman2d {

/// Space curve obtained by lifting the outer boundary by its scalar data:
/// gamma(t) = (g1(t), g2(t), f(t)).
struct LiftedCurve {
    const Domain* domain = nullptr;
    BoundaryData data;

    Vec3 eval(double t) const;
    Vec3 d1(double t) const;
    Vec3 d2(double t) const;
    Vec3 d3(double t) const;
};

/// Raw torsion numerator det[gamma', gamma'', gamma'''] at t.
double torsion_determinant(const LiftedCurve& curve, double t);

/// Sign of the torsion with a tolerance band on the normalized determinant
/// det / (|gamma'|^3 |gamma' x gamma''|); returns 0 inside the band.
int torsion_sign(const LiftedCurve& curve, double t, double tol = 1e-10);

struct SignChange {
    double location = 0.0;
    int before = 0;
    int after = 0;
    bool is_cup_candidate() const { return before > 0 && after < 0; }
};

/// Torsion sign changes over a window: grid scan plus bisection refinement of
/// each flip location to `loc_tol`.  Throws TooManyChanges past `max_changes`.
std::vector<SignChange> torsion_sign_changes(const LiftedCurve& curve, double t_lo,
                                             double t_hi, int grid = 512,
                                             double loc_tol = 1e-10, int max_changes = 64);

/// Chord of the lifted curve between parameters a and b.
struct Chord {
    double a = 0.0;
    double b = 0.0;
    double residual = 0.0;    ///< cup-equation residual at (a, b)
    double ineq_a = 0.0;      ///< chord differential product at the a end
    double ineq_b = 0.0;      ///< chord differential product at the b end
    bool in_domain = true;    ///< planar chord stays inside the domain
};

/// Cup-equation residual: determinant with rows gamma'(a) (planar parts and
/// data), gamma'(b), and gamma(b) - gamma(a).
double cup_equation_residual(const LiftedCurve& curve, double a, double b);

/// Chord differential products at both ends: the triple product of the curve
/// tangent, the chord vector toward the other end, and the Frenet principal
/// normal.  Both strictly negative for an admissible cup chord.
std::pair<double, double> chord_differential_inequalities(const LiftedCurve& curve, double a,
                                                          double b);

struct CupChordOptions {
    double step = 1e-2;        ///< continuation step in the a parameter
    double min_step = 1e-6;    ///< stall threshold for step halving
    double newton_tol = 1e-12; ///< corrector tolerance on the residual scale
    int max_chords = 4096;
};

/// Continuation of the cup-chord family out of a torsion sign-change origin.
/// Non-cup origins (direction - to +) yield an empty family.  The family is
/// terminated when a chord leaves the domain; ChordExitsDomain is thrown only
/// when already the seed chord does.  Throws ContinuationStall when the
/// corrector cannot progress above the minimum step.
std::vector<Chord> solve_cup_chords(const LiftedCurve& curve, const SignChange& origin,
                                    const CupChordOptions& opts = {});

} // namespace bellman2d
