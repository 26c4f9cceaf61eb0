#pragma once

#include <random>

#include "bellman2d/presets.hpp"

namespace bellman2d {

/// Step function on I = [0, 1] with values on the outer boundary, stored as
/// breakpoints and the outer-curve parameter of each piece.
struct StepFunction {
    std::vector<double> breakpoints; ///< 0 = b_0 < ... < b_m = 1
    std::vector<double> params;      ///< outer parameter per piece (size m)

    int pieces() const { return static_cast<int>(params.size()); }
};

/// Average of the boundary-valued step function over [a, b] (subset of I).
Vec2 step_average(const Domain& dom, const StepFunction& phi, double a, double b);

/// Average of the data over the same subinterval.
double step_data_average(const BoundaryData& data, const StepFunction& phi, double a, double b);

struct MembershipReport {
    bool ok = false;
    double worst_margin = 0.0; ///< min over scanned subintervals of -inner_level(average)
    double worst_a = 0.0, worst_b = 0.0;
    Vec2 worst_average = Vec2::Zero();
    int pairs_checked = 0;
};

/// Scans subinterval averages over a grid refining the breakpoints (all grid
/// pairs, so in particular all breakpoint pairs) and reports the worst signed
/// margin to the inner boundary in level-function units.  ok means no scanned
/// average lies strictly inside the inner region.
MembershipReport membership_check(const Domain& dom, const StepFunction& phi,
                                  int grid_per_piece = 8);

/// Binary split tree: interior nodes hold x = lambda x_plus + (1-lambda) x_minus
/// with the segment [x_minus, x_plus] inside the domain; leaves lie on the
/// outer boundary and record its parameter.
struct SplitNode {
    Vec2 point = Vec2::Zero();
    bool leaf = false;
    double leaf_param = 0.0;
    double lambda = 0.0; ///< weight of the plus child
    int minus = -1;
    int plus = -1;
};

struct SplitTree {
    std::vector<SplitNode> nodes;
    int root = -1;
};

struct SplitOptions {
    int max_depth = 6;
    double resolution = 0.02;  ///< ray-march step for extents
    double extent_cap = 1e3;
    int direction_tries = 24;  ///< angular search budget before StuckPoint
    bool allow_shrink = true;  ///< random sub-extent endpoints (deeper trees)
};

/// Grows one split tree from x by recursive admissible splitting: grazing
/// directions are preferred, full-length segments end on a boundary, shrunken
/// ones recurse.  Throws StuckPoint when no admissible direction is found
/// within the angular budget (or depth 0 off the boundary).
SplitTree grow_split_tree(const Domain& dom, const Vec2& x, std::mt19937_64& rng,
                          const SplitOptions& opts = {});

/// Unfolds a tree into a step function: each node's interval is divided
/// between the children in proportion to their weights, minus child first.
StepFunction tree_to_step_function(const Domain& dom, const SplitTree& tree);

struct LowerBoundResult {
    double value = -kInf;
    StepFunction witness;
    int candidates = 0; ///< candidates actually evaluated
    int admissible = 0; ///< candidates passing the membership check
};

struct LowerBoundOptions {
    SplitOptions split;
    int fan = 64;              ///< deterministic full-chord candidates first
    double average_tol = 1e-10;
};

/// Certified lower bound at x: best data average over admissible step
/// functions with overall average x, searched over a deterministic candidate
/// schedule (direction fan, grazing chords, then seeded random split trees)
/// truncated to `budget` candidates.  Every reported value is backed by a
/// witness that passed the membership scan and the average check.
/// Throws NoCandidate when no admissible candidate exists within the budget.
LowerBoundResult lower_bound(const Domain& dom, const BoundaryData& data, const Vec2& x,
                             int budget, unsigned seed, const LowerBoundOptions& opts = {});

} // namespace bellman2d
