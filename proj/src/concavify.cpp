#include "bellman2d/concavify.hpp"

#include <algorithm>
#include <cmath>

namespace bellman2d {

namespace {

// Linear interpolation within one column at absolute height y.  Exact for
// fields affine in position (column nodes are collinear and evenly spaced).
double column_value(const Mesh& mesh, const std::vector<double>& values, int column, double y) {
    const int begin = mesh.column_begin[column];
    const int n = mesh.layers(column);
    if (n == 1) return values[begin];
    const double y0 = mesh.nodes[begin].pos.y();
    const double y1 = mesh.nodes[begin + n - 1].pos.y();
    double v = (y - y0) / (y1 - y0);
    v = std::clamp(v, 0.0, 1.0);
    const double pos = v * (n - 1);
    const int k = std::min(n - 2, static_cast<int>(pos));
    const double frac = pos - k;
    return (1.0 - frac) * values[begin + k] + frac * values[begin + k + 1];
}

struct EndpointOption {
    double dist = 0.0;
    double value = 0.0;
};

constexpr double kFractions[] = {1.0, 0.6, 0.35, 0.15};

// Candidate endpoints along one side of a ray: the outer-boundary data
// anchor (full extent) and up to four column-plane crossings near the
// fraction targets, valued inside a single column.
int side_options(const Mesh& mesh, const BoundaryData& data,
                 const std::vector<double>& values, const Vec2& pos, const Vec2& dir,
                 double extent, MeshRayEnd end, double bparam, int own_column,
                 EndpointOption out[6]) {
    int count = 0;
    if (extent <= 1e-12) return 0;

    if (end == MeshRayEnd::Outer) {
        out[count++] = {extent, data.value(bparam)};
    }

    if (std::abs(dir.x()) < 1e-9) {
        // vertical ray: every point stays on the node's own column
        for (double f : kFractions) {
            const double d = f * extent;
            out[count++] = {d, column_value(mesh, values, own_column,
                                            pos.y() + d * dir.y())};
        }
        return count;
    }

    int last_col = -1;
    for (double f : kFractions) {
        const double x_target = pos.x() + f * extent * dir.x();
        // nearest column to the target abscissa
        auto it = std::lower_bound(mesh.column_x.begin(), mesh.column_x.end(), x_target);
        int c = static_cast<int>(it - mesh.column_x.begin());
        if (c >= mesh.column_count()) c = mesh.column_count() - 1;
        if (c > 0 &&
            std::abs(mesh.column_x[c - 1] - x_target) < std::abs(mesh.column_x[c] - x_target))
            --c;
        const double d = (mesh.column_x[c] - pos.x()) / dir.x();
        if (d <= 1e-12 || d > extent * (1.0 + 1e-12)) continue;
        if (c == last_col) continue;
        last_col = c;
        out[count++] = {d, column_value(mesh, values, c, pos.y() + d * dir.y())};
    }
    return count;
}

// Best raise available at one node given the current values.
double best_candidate(const Mesh& mesh, const BoundaryData& data,
                      const std::vector<double>& values, int node_idx, double ceiling) {
    const MeshNode& node = mesh.nodes[node_idx];
    double best = -kInf;
    EndpointOption plus[6], minus[6];
    for (int r = mesh.ray_begin[node_idx]; r < mesh.ray_begin[node_idx + 1]; ++r) {
        const MeshRay& ray = mesh.rays[r];
        const int np = side_options(mesh, data, values, node.pos, ray.dir, ray.t_plus,
                                    ray.end_plus, ray.bparam_plus, node.column, plus);
        const int nm = side_options(mesh, data, values, node.pos, -ray.dir, ray.t_minus,
                                    ray.end_minus, ray.bparam_minus, node.column, minus);
        for (int i = 0; i < np; ++i) {
            for (int j = 0; j < nm; ++j) {
                const double lambda = minus[j].dist / (plus[i].dist + minus[j].dist);
                const double cand =
                    lambda * plus[i].value + (1.0 - lambda) * minus[j].value;
                best = std::max(best, cand);
            }
        }
    }
    return std::min(best, ceiling);
}

} // namespace

MajorantResult minimal_concave_majorant(const Mesh& mesh, const BoundaryData& data,
                                        const SweepOptions& opts) {
    MajorantResult result;
    ScalarField& field = result.field;
    field.ceiling = opts.ceiling;
    field.values.resize(mesh.node_count());
    field.pinned.assign(mesh.node_count(), 0);

    const double floor = data.lower_bound(mesh.t_lo, mesh.t_hi);
    result.info.data_floor = floor;
    for (int i = 0; i < mesh.node_count(); ++i) {
        const MeshNode& node = mesh.nodes[i];
        field.values[i] =
            node.on_outer ? std::min(data.value(node.boundary_param), opts.ceiling) : floor;
    }

    std::vector<double> scratch;
    for (int sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
        double delta = 0.0;
        const std::vector<double>* read = &field.values;
        if (opts.mode == SweepMode::Jacobi) {
            scratch = field.values;
            read = &scratch;
        }
        for (int i = 0; i < mesh.node_count(); ++i) {
            if (mesh.nodes[i].on_outer) continue; // boundary carries the data
            const double cand = best_candidate(mesh, data, *read, i, opts.ceiling);
            if (cand > field.values[i]) {
                delta = std::max(delta, cand - field.values[i]);
                field.values[i] = cand;
            }
        }
        result.info.sweeps = sweep;
        result.info.final_delta = delta;
        double scale = 1.0;
        for (double v : field.values) scale = std::max(scale, std::abs(v));
        if (delta <= opts.tolerance * scale) {
            result.info.converged = true;
            break;
        }
    }

    for (int i = 0; i < mesh.node_count(); ++i) {
        if (field.values[i] >= opts.ceiling * (1.0 - 1e-12)) {
            field.pinned[i] = 1;
            ++result.info.pinned_count;
        }
    }
    return result;
}

double local_concavity_violation(const Mesh& mesh, const BoundaryData& data,
                                 const ScalarField& field, double ceiling) {
    double worst = 0.0;
    for (int i = 0; i < mesh.node_count(); ++i) {
        if (mesh.nodes[i].on_outer) continue;
        if (field.pinned[i]) continue;
        const double cand = best_candidate(mesh, data, field.values, i, ceiling);
        worst = std::max(worst, cand - field.values[i]);
    }
    return worst;
}

double interpolate(const Mesh& mesh, const ScalarField& field, const Vec2& p) {
    const int cols = mesh.column_count();
    if (cols == 1) return column_value(mesh, field.values, 0, p.y());
    auto it = std::upper_bound(mesh.column_x.begin(), mesh.column_x.end(), p.x());
    int hi = static_cast<int>(it - mesh.column_x.begin());
    hi = std::clamp(hi, 1, cols - 1);
    const int lo = hi - 1;
    const double span = mesh.column_x[hi] - mesh.column_x[lo];
    double mu = span > 0.0 ? (p.x() - mesh.column_x[lo]) / span : 0.0;
    mu = std::clamp(mu, 0.0, 1.0);
    const double v_lo = column_value(mesh, field.values, lo, p.y());
    const double v_hi = column_value(mesh, field.values, hi, p.y());
    return (1.0 - mu) * v_lo + mu * v_hi;
}

} // namespace bellman2d
