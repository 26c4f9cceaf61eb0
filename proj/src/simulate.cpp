#include "bellman2d/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "bellman2d/tangent.hpp"

namespace bellman2d {

namespace {

// Piece lengths of phi restricted to [a, b], walked in order.
template <typename Accumulate>
void walk_pieces(const StepFunction& phi, double a, double b, Accumulate&& acc) {
    for (int i = 0; i < phi.pieces(); ++i) {
        const double lo = std::max(a, phi.breakpoints[i]);
        const double hi = std::min(b, phi.breakpoints[i + 1]);
        if (hi > lo) acc(i, hi - lo);
    }
}

} // namespace

Vec2 step_average(const Domain& dom, const StepFunction& phi, double a, double b) {
    Vec2 sum = Vec2::Zero();
    double len = 0.0;
    walk_pieces(phi, a, b, [&](int i, double w) {
        sum += w * dom.outer.eval(phi.params[i]);
        len += w;
    });
    if (len <= 0.0) throw std::invalid_argument("step_average: empty interval");
    return sum / len;
}

double step_data_average(const BoundaryData& data, const StepFunction& phi, double a,
                         double b) {
    double sum = 0.0, len = 0.0;
    walk_pieces(phi, a, b, [&](int i, double w) {
        sum += w * data.value(phi.params[i]);
        len += w;
    });
    if (len <= 0.0) throw std::invalid_argument("step_data_average: empty interval");
    return sum / len;
}

MembershipReport membership_check(const Domain& dom, const StepFunction& phi,
                                  int grid_per_piece) {
    MembershipReport report;

    std::vector<double> grid;
    for (int i = 0; i < phi.pieces(); ++i) {
        const double a = phi.breakpoints[i], b = phi.breakpoints[i + 1];
        for (int k = 0; k < grid_per_piece; ++k)
            grid.push_back(a + (b - a) * k / grid_per_piece);
    }
    grid.push_back(phi.breakpoints.back());

    // prefix sums of the boundary vector over grid cells
    std::vector<Vec2> prefix(grid.size(), Vec2::Zero());
    int piece = 0;
    for (size_t i = 1; i < grid.size(); ++i) {
        const double a = grid[i - 1], b = grid[i];
        while (piece + 1 < phi.pieces() && phi.breakpoints[piece + 1] <= a + 1e-15) ++piece;
        prefix[i] = prefix[i - 1] + (b - a) * dom.outer.eval(phi.params[piece]);
    }

    report.worst_margin = kInf;
    for (size_t i = 0; i < grid.size(); ++i) {
        for (size_t j = i + 1; j < grid.size(); ++j) {
            const double len = grid[j] - grid[i];
            if (len < 1e-12) continue;
            const Vec2 avg = (prefix[j] - prefix[i]) / len;
            const double margin = -dom.inner_region.level(avg);
            ++report.pairs_checked;
            if (margin < report.worst_margin) {
                report.worst_margin = margin;
                report.worst_a = grid[i];
                report.worst_b = grid[j];
                report.worst_average = avg;
            }
        }
    }
    report.ok = report.worst_margin >= -dom.boundary_tol;
    return report;
}

namespace {

struct Splitter {
    const Domain& dom;
    std::mt19937_64& rng;
    const SplitOptions& opts;
    SplitTree tree;

    int build(const Vec2& point, int depth) {
        // leaf: the point reached the outer boundary
        if (dom.outer_side(point) == RegionSide::Boundary &&
            dom.inner_side(point) != RegionSide::Inside) {
            SplitNode node;
            node.point = point;
            node.leaf = true;
            node.leaf_param = dom.outer.param_of_point(point);
            tree.nodes.push_back(node);
            return static_cast<int>(tree.nodes.size()) - 1;
        }
        if (depth <= 0)
            throw StuckPoint("grow_split_tree: depth exhausted off the outer boundary");

        const bool on_inner = dom.inner_side(point) == RegionSide::Boundary;
        std::uniform_real_distribution<double> unif(0.0, 1.0);

        for (int attempt = 0; attempt < opts.direction_tries; ++attempt) {
            Vec2 d;
            if (on_inner || unif(rng) < 0.5) {
                const auto graze = graze_directions(dom, point);
                if (!graze.empty()) {
                    d = graze[std::uniform_int_distribution<int>(
                        0, static_cast<int>(graze.size()) - 1)(rng)];
                } else {
                    const double theta = M_PI * unif(rng);
                    d = Vec2(std::cos(theta), std::sin(theta));
                }
            } else {
                const double theta = M_PI * unif(rng);
                d = Vec2(std::cos(theta), std::sin(theta));
            }

            const RayClip plus = max_extent(dom, point, d, opts.extent_cap, opts.resolution);
            const RayClip minus = max_extent(dom, point, -d, opts.extent_cap, opts.resolution);
            double sp = plus.t, sm = minus.t;
            if (sp <= 1e-10 || sm <= 1e-10) continue;

            // shrink only with enough depth left to finish from interior points
            const bool shrink =
                opts.allow_shrink && depth >= 3 && unif(rng) < 0.35 && !on_inner;
            if (shrink) {
                sp *= 0.2 + 0.8 * unif(rng);
                sm *= 0.2 + 0.8 * unif(rng);
            }

            SplitNode node;
            node.point = point;
            node.lambda = sm / (sp + sm);
            tree.nodes.push_back(node);
            const int idx = static_cast<int>(tree.nodes.size()) - 1;
            const int child_minus = build(point - sm * d, depth - 1);
            const int child_plus = build(point + sp * d, depth - 1);
            tree.nodes[idx].minus = child_minus;
            tree.nodes[idx].plus = child_plus;
            return idx;
        }
        throw StuckPoint("grow_split_tree: no admissible split direction found");
    }
};

} // namespace

SplitTree grow_split_tree(const Domain& dom, const Vec2& x, std::mt19937_64& rng,
                          const SplitOptions& opts) {
    if (!dom.contains(x))
        throw std::invalid_argument("grow_split_tree: point outside the domain");
    Splitter splitter{dom, rng, opts, {}};
    splitter.tree.root = splitter.build(x, opts.max_depth);
    return splitter.tree;
}

namespace {

void unfold(const SplitTree& tree, int idx, double a, double b, StepFunction& out) {
    const SplitNode& node = tree.nodes[idx];
    if (node.leaf) {
        out.breakpoints.push_back(b);
        out.params.push_back(node.leaf_param);
        return;
    }
    const double mid = a + (1.0 - node.lambda) * (b - a); // minus child first
    unfold(tree, node.minus, a, mid, out);
    unfold(tree, node.plus, mid, b, out);
}

} // namespace

StepFunction tree_to_step_function(const Domain& dom, const SplitTree& tree) {
    (void)dom;
    StepFunction phi;
    phi.breakpoints.push_back(0.0);
    unfold(tree, tree.root, 0.0, 1.0, phi);
    phi.breakpoints.back() = 1.0;
    return phi;
}

namespace {

// Two-leaf candidate from a full chord through x, when both ends reach the
// outer boundary.
bool chord_candidate(const Domain& dom, const Vec2& x, const Vec2& d, const SplitOptions& so,
                     StepFunction& out) {
    const RayClip plus = max_extent(dom, x, d, so.extent_cap, so.resolution);
    if (plus.end != RayEnd::OuterBoundary) return false;
    const RayClip minus = max_extent(dom, x, -d, so.extent_cap, so.resolution);
    if (minus.end != RayEnd::OuterBoundary) return false;
    if (plus.t <= 1e-10 || minus.t <= 1e-10) return false;
    const double lambda = minus.t / (plus.t + minus.t);
    out.breakpoints = {0.0, 1.0 - lambda, 1.0};
    out.params = {minus.boundary_param, plus.boundary_param};
    return true;
}

} // namespace

LowerBoundResult lower_bound(const Domain& dom, const BoundaryData& data, const Vec2& x,
                             int budget, unsigned seed, const LowerBoundOptions& opts) {
    if (!dom.contains(x))
        throw std::invalid_argument("lower_bound: point outside the domain");

    LowerBoundResult result;
    std::mt19937_64 rng(seed);
    int considered = 0;

    auto consider = [&](const StepFunction& phi) {
        ++result.candidates;
        const double value = step_data_average(data, phi, 0.0, 1.0);
        if (value <= result.value) return; // cannot improve; skip the scans
        if ((step_average(dom, phi, 0.0, 1.0) - x).norm() >
            opts.average_tol * (1.0 + x.norm()))
            return;
        if (!membership_check(dom, phi).ok) return;
        ++result.admissible;
        result.value = value;
        result.witness = phi;
    };

    // deterministic fan of full chords
    for (int k = 0; k < opts.fan && considered < budget; ++k, ++considered) {
        const double theta = M_PI * (k + 0.5) / opts.fan;
        StepFunction phi;
        if (chord_candidate(dom, x, Vec2(std::cos(theta), std::sin(theta)), opts.split, phi))
            consider(phi);
    }

    // grazing chords
    if (considered < budget) {
        for (const Vec2& d : graze_directions(dom, x)) {
            if (considered >= budget) break;
            ++considered;
            StepFunction phi;
            if (chord_candidate(dom, x, d, opts.split, phi)) consider(phi);
        }
    }

    // seeded random split trees
    std::geometric_distribution<int> extra_depth(0.5);
    while (considered < budget) {
        ++considered;
        SplitOptions so = opts.split;
        so.max_depth = std::min(opts.split.max_depth, 1 + extra_depth(rng));
        try {
            const SplitTree tree = grow_split_tree(dom, x, rng, so);
            consider(tree_to_step_function(dom, tree));
        } catch (const StuckPoint&) {
            // counted against the budget, nothing to evaluate
        }
    }

    if (result.admissible == 0)
        throw NoCandidate("lower_bound: no admissible candidate within budget " +
                          std::to_string(budget));
    return result;
}

} // namespace bellman2d
