#pragma once

#include <vector>

#include "bellman2d/domain.hpp"

namespace bellman2d {

struct MeshNode {
    Vec2 pos = Vec2::Zero();
    int column = 0;
    int layer = 0;
    bool on_outer = false;       ///< lies on the outer boundary (carries data)
    bool on_inner = false;       ///< lies on the inner boundary
    double boundary_param = 0.0; ///< outer-curve parameter when on_outer
};

/// How a precomputed constraint ray terminated on each side.
enum class MeshRayEnd { Outer, Inner, Window };

struct MeshRay {
    Vec2 dir = Vec2::Zero(); ///< unit direction; extents run both ways
    double t_plus = 0.0;
    double t_minus = 0.0;
    MeshRayEnd end_plus = MeshRayEnd::Window;
    MeshRayEnd end_minus = MeshRayEnd::Window;
    double bparam_plus = 0.0;  ///< outer parameter when end_plus == Outer
    double bparam_minus = 0.0;
};

struct MeshOptions {
    int fan = 48;            ///< unoriented fan directions per node
    double extent_cap = 0.0; ///< 0 = auto (a multiple of the window span)
    int min_layers = 1;
};

/// Column-structured mesh over a parameter window of the outer boundary.
///
/// Columns are vertical lines through outer-boundary sample points; each
/// column holds the exact outer point (with its parameter), evenly spaced
/// interior nodes, and the exact inner-boundary crossing.  Per node, a fan of
/// maximal admissible segments (plus the two grazing directions tangent to
/// the inner boundary) is precomputed for the concavity sweep.
struct Mesh {
    Domain domain;
    double resolution = 0.0;
    double t_lo = 0.0, t_hi = 0.0;

    std::vector<double> column_x;   ///< strictly increasing x1 per column
    std::vector<double> column_t;   ///< outer parameter per column
    std::vector<int> column_begin;  ///< node range per column (+ terminator)
    std::vector<MeshNode> nodes;

    std::vector<MeshRay> rays;
    std::vector<int> ray_begin;     ///< per-node offsets into rays (+ terminator)

    int column_count() const { return static_cast<int>(column_x.size()); }
    int node_count() const { return static_cast<int>(nodes.size()); }
    int node_index(int column, int layer) const { return column_begin[column] + layer; }
    int layers(int column) const { return column_begin[column + 1] - column_begin[column]; }
};

/// Builds the mesh; throws EmptyMesh when the window yields no nodes and
/// std::invalid_argument for non-vertically-convex domains or bad windows.
Mesh build_mesh(const Domain& dom, double t_lo, double t_hi, double resolution,
                const MeshOptions& opts = {});

} // namespace bellman2d
