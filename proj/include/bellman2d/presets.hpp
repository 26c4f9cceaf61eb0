#pragma once

#include <map>
#include <memory>
#include <random>
#include <string>

#include "bellman2d/domain.hpp"

namespace bellman2d {

/// Oscillation-class domain: region between the parabola x2 = x1^2 and its
/// vertical translate by epsilon^2.  Outer boundary g(t) = (t, t^2).
/// Step functions on the outer boundary whose subinterval averages avoid the
/// inner region are exactly those with quadratic oscillation <= epsilon^2.
Domain bmo_domain(double epsilon);

/// Power-weight domain with exponents p1 > p2 (both nonzero) and factor
/// Q >= 1: outer boundary { x2^(1/p2) = x1^(1/p1) }, inner region
/// { Q x2^(1/p2) < x1^(1/p1) }, both in the positive quadrant.
/// Parametrized as g(u) = (s^p1, s^p2), s = e^(sigma u), with sigma chosen
/// so the domain lies to the left.  Q = 1 collapses the annulus to the curve
/// and is permitted.  Throws InvalidExponents unless p1 > p2, both nonzero.
Domain ap_domain(double p1, double p2, double Q);

/// The canonical scalar s of a point on the ap outer boundary (= x1^(1/p1)).
double ap_scalar_of_point(double p1, double p2, const Vec2& x);

/// Convexity-gap domain for a convex increasing Phi: region between the
/// graphs of Phi and Q*Phi, Q > 1.  Callbacks supply Phi and its first three
/// derivatives.  Spot-checks convexity of Phi on a sample window and throws
/// NotConvex on failure; throws std::invalid_argument for Q <= 1.
Domain reverse_jensen_domain(const std::function<double(double)>& phi,
                             const std::function<double(double)>& phi_d1,
                             const std::function<double(double)>& phi_d2,
                             const std::function<double(double)>& phi_d3, double Q,
                             double t_lo = -kInf, double t_hi = kInf);

/// Concentric disks (outer radius r0 > inner radius r1 > 0).  Synthetic
/// diagnostic domain: bounded, hence deliberately violating the unbounded
/// geometry conditions; not vertically convex, hence not mesh-capable.
Domain disks_domain(double r0, double r1);

// ---------------------------------------------------------------------------
// Boundary data
// ---------------------------------------------------------------------------

/// Scalar data on the outer boundary as a function of the curve's canonical
/// scalar coordinate, with derivatives in the curve parameter and a finite
/// lower bound over a window.
struct BoundaryData {
    std::string label;
    bool smooth_c3 = true;

    std::function<double(double)> value; ///< f(t) as a function of the curve parameter
    std::function<double(double)> d1;
    std::function<double(double)> d2;
    std::function<double(double)> d3;

    /// Infimum of the data over a parameter window (sampled).
    double lower_bound(double t_lo, double t_hi, int samples = 512) const;
};

/// Parsed form of a boundary-data request, e.g. {"exp", {{"lambda", 1}}}.
struct DataSpec {
    std::string kind; ///< affine | power | exp | sin | indicator
    std::map<std::string, double> params;
};

DataSpec parse_data_spec(const std::string& text);

/// Builds boundary data for a domain.  The spec's function acts on the
/// curve's canonical scalar coordinate (the parameter itself for the bmo and
/// reverse_jensen presets, s = e^(sigma u) for ap); derivatives are chained
/// through that coordinate.
BoundaryData make_boundary_data(const Domain& dom, const DataSpec& spec);

// ---------------------------------------------------------------------------
// Class correspondence
// ---------------------------------------------------------------------------

struct CorrespondenceResult {
    int total = 0;
    int agreed = 0;
    int ties_excluded = 0; ///< cases with |margin| below the tie tolerance
    double agreement_rate = 1.0; ///< over non-tie cases
};

/// Draws random step functions on the outer boundary and compares geometric
/// membership (no subinterval average strictly inside the inner region) with
/// the preset's scalar condition (quadratic oscillation bound for bmo, norm
/// ratio bound for ap).  Ties with |margin| < tie_tol are excluded.
CorrespondenceResult class_correspondence_check(const std::string& preset, double preset_a,
                                                double preset_b, double preset_c, int count,
                                                unsigned seed, double tie_tol = 1e-9);

} // namespace bellman2d
