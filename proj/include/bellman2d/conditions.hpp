#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bellman2d/tangent.hpp"

namespace bellman2d {

enum class Verdict { Pass, Fail, Inconclusive };

std::string to_string(Verdict v);

/// One row of a diagnostic report: a labelled scalar plus a verdict.
struct ConditionRow {
    std::string label;
    double value = 0.0;
    Verdict verdict = Verdict::Inconclusive;
};

struct ConditionReport {
    std::string condition;
    Verdict verdict = Verdict::Inconclusive;
    std::vector<ConditionRow> rows;
};

/// Samples |g(t)| growth of both boundary curves over a parameter window and
/// reports whether the geometry looks unbounded (sup of |g| beyond a margin
/// of the window's interior values and still growing at the window ends).
/// Only ever "consistent with unbounded": Pass or Fail, never a proof.
ConditionReport check_unbounded(const Domain& dom, double t_lo, double t_hi, int samples = 128);

/// Ray condition: every ray contained in the outer region can be translated
/// to lie entirely in the inner region.  Sampled over `directions` unit
/// directions; directions admitting no outer ray within the horizon are
/// vacuous.  Pass iff every admissible direction admits a sampled translate.
ConditionReport check_ray_condition(const Domain& dom, int directions = 64,
                                    double horizon = 64.0);

/// Growth classification of partial integrals of 1/ell over dyadic windows.
enum class Divergence { Diverges, Inconclusive };

struct DivergenceReport {
    Divergence verdict = Divergence::Inconclusive;
    std::vector<double> window_integrals; ///< integral over each dyadic window
    double total = 0.0;
};

/// Core classifier: integrates 1/ell(sigma) over dyadic arclength windows
/// [0, T], [T, 2T], ... and classifies the growth of the partial sums.
/// Declares divergence when window increments fail to decay geometrically.
DivergenceReport classify_divergence(const std::function<double(double)>& ell_of_arclength,
                                     double first_window, int windows);

/// Divergence condition for one tangent family: integrates 1/ell_R toward
/// -infinity (side = Right) or 1/ell_L toward +infinity (side = Left) in the
/// arclength of the inner boundary, starting from inner parameter s0.
DivergenceReport check_divergence_condition(const Domain& dom, TangentSide side, double s0,
                                            double horizon, int windows = 8);

} // namespace bellman2d
