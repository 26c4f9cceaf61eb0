#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "bellman2d/concavify.hpp"
#include "bellman2d/mesh.hpp"
#include "bellman2d/presets.hpp"

using namespace bellman2d;

namespace {

BoundaryData data_for(const Domain& dom, const std::string& spec) {
    return make_boundary_data(dom, parse_data_spec(spec));
}

// ---------------------------------------------------------------------------
// Brute-force restatement of the raise-operator fixed point, written directly
// against the mesh structures: plain Jacobi sweeps over every ray of every
// node, endpoint values from the outer-boundary data anchor plus the
// fraction-target column crossings, iterated until the largest raise stalls.
// ---------------------------------------------------------------------------

double brute_column_value(const Mesh& mesh, const std::vector<double>& v, int col, double y) {
    const int b = mesh.column_begin[col];
    const int n = mesh.layers(col);
    if (n == 1) return v[b];
    const double y0 = mesh.nodes[b].pos.y();
    const double y1 = mesh.nodes[b + n - 1].pos.y();
    const double s = std::clamp((y - y0) / (y1 - y0), 0.0, 1.0) * (n - 1);
    const int k = std::min(n - 2, static_cast<int>(s));
    const double f = s - k;
    return (1.0 - f) * v[b + k] + f * v[b + k + 1];
}

struct BruteEnd {
    double dist;
    double value;
};

std::vector<BruteEnd> brute_side(const Mesh& mesh, const BoundaryData& data,
                                 const std::vector<double>& v, const Vec2& pos,
                                 const Vec2& dir, double extent, MeshRayEnd end,
                                 double bparam, int own_col) {
    std::vector<BruteEnd> out;
    if (extent <= 1e-12) return out;
    if (end == MeshRayEnd::Outer) out.push_back({extent, data.value(bparam)});
    static const double fractions[] = {1.0, 0.6, 0.35, 0.15};
    if (std::abs(dir.x()) < 1e-9) {
        for (double f : fractions)
            out.push_back({f * extent,
                           brute_column_value(mesh, v, own_col, pos.y() + f * extent * dir.y())});
        return out;
    }
    for (double f : fractions) {
        const double x_target = pos.x() + f * extent * dir.x();
        int c = 0;
        for (int k = 1; k < mesh.column_count(); ++k)
            if (std::abs(mesh.column_x[k] - x_target) < std::abs(mesh.column_x[c] - x_target))
                c = k;
        const double d = (mesh.column_x[c] - pos.x()) / dir.x();
        if (d <= 1e-12 || d > extent * (1.0 + 1e-12)) continue;
        out.push_back({d, brute_column_value(mesh, v, c, pos.y() + d * dir.y())});
    }
    return out;
}

std::vector<double> brute_fixed_point(const Mesh& mesh, const BoundaryData& data, double tol,
                                      int max_sweeps = 20000, double ceiling = 1e12) {
    const double floor = data.lower_bound(mesh.t_lo, mesh.t_hi);
    std::vector<double> v(mesh.node_count());
    for (int i = 0; i < mesh.node_count(); ++i)
        v[i] = mesh.nodes[i].on_outer
                   ? std::min(data.value(mesh.nodes[i].boundary_param), ceiling)
                   : floor;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        const std::vector<double> read = v;
        double delta = 0.0;
        for (int i = 0; i < mesh.node_count(); ++i) {
            const MeshNode& node = mesh.nodes[i];
            if (node.on_outer) continue;
            double best = -kInf;
            for (int r = mesh.ray_begin[i]; r < mesh.ray_begin[i + 1]; ++r) {
                const MeshRay& ray = mesh.rays[r];
                const auto plus = brute_side(mesh, data, read, node.pos, ray.dir, ray.t_plus,
                                             ray.end_plus, ray.bparam_plus, node.column);
                const auto minus = brute_side(mesh, data, read, node.pos, -ray.dir,
                                              ray.t_minus, ray.end_minus, ray.bparam_minus,
                                              node.column);
                for (const BruteEnd& p : plus)
                    for (const BruteEnd& m : minus) {
                        const double lambda = m.dist / (p.dist + m.dist);
                        best = std::max(best, lambda * p.value + (1.0 - lambda) * m.value);
                    }
            }
            best = std::min(best, ceiling);
            if (best > v[i]) {
                delta = std::max(delta, best - v[i]);
                v[i] = best;
            }
        }
        double scale = 1.0;
        for (double x : v) scale = std::max(scale, std::abs(x));
        if (delta <= tol * scale) break;
    }
    return v;
}

} // namespace

TEST_SUITE("concavify") {

    TEST_CASE("sweep fixed point matches the brute-force restatement") {
        const Domain dom = bmo_domain(1.0);
        const BoundaryData data = data_for(dom, "power p=2");
        const Mesh mesh = build_mesh(dom, -1.0, 1.0, 0.2);

        SweepOptions opts;
        opts.mode = SweepMode::Jacobi;
        opts.tolerance = 1e-13;
        opts.max_sweeps = 20000;
        const MajorantResult lib = minimal_concave_majorant(mesh, data, opts);
        CHECK(lib.info.converged);

        const std::vector<double> oracle = brute_fixed_point(mesh, data, 1e-13);
        REQUIRE(oracle.size() == lib.field.values.size());
        double worst = 0.0;
        for (size_t i = 0; i < oracle.size(); ++i)
            worst = std::max(worst, std::abs(oracle[i] - lib.field.values[i]));
        CHECK(worst <= 1e-10);
    }

    TEST_CASE("gauss-seidel and jacobi agree at the fixed point") {
        const Domain dom = bmo_domain(1.0);
        const BoundaryData data = data_for(dom, "power p=2");
        const Mesh mesh = build_mesh(dom, -1.0, 1.0, 0.2);

        SweepOptions gs, jac;
        gs.tolerance = jac.tolerance = 1e-13;
        gs.max_sweeps = jac.max_sweeps = 20000;
        jac.mode = SweepMode::Jacobi;
        const MajorantResult a = minimal_concave_majorant(mesh, data, gs);
        const MajorantResult b = minimal_concave_majorant(mesh, data, jac);
        REQUIRE(a.info.converged);
        REQUIRE(b.info.converged);
        double worst = 0.0;
        for (size_t i = 0; i < a.field.values.size(); ++i)
            worst = std::max(worst, std::abs(a.field.values[i] - b.field.values[i]));
        CHECK(worst <= 1e-6);
        // gauss-seidel propagates raises within a sweep, so it must not be slower
        CHECK(a.info.sweeps <= b.info.sweeps);
    }

    TEST_CASE("affine data is reproduced exactly away from the window edges") {
        // an affine function of position is locally concave and matches
        // affine boundary data, so the minimal majorant equals it wherever
        // chords anchored on boundary data exist
        const Domain dom = bmo_domain(0.5);
        const BoundaryData data = data_for(dom, "affine c0=0.3 c1=-2");
        const Mesh mesh = build_mesh(dom, -2.0, 2.0, 0.1);
        const MajorantResult res = minimal_concave_majorant(mesh, data);
        CHECK(res.info.converged);
        double worst = 0.0;
        for (int i = 0; i < mesh.node_count(); ++i) {
            const Vec2& p = mesh.nodes[i].pos;
            if (std::abs(p.x()) > 1.0) continue; // away from window truncation
            worst = std::max(worst, std::abs(res.field.values[i] - (0.3 - 2.0 * p.x())));
        }
        CHECK(worst <= 1e-9);
        CHECK(res.info.data_floor == doctest::Approx(0.3 - 2.0 * 2.0).epsilon(1e-9));
    }

    TEST_CASE("refinement can only lower the field, up to the coarse resolution") {
        const Domain dom = bmo_domain(1.0);
        const BoundaryData data = data_for(dom, "power p=2");
        const Mesh coarse = build_mesh(dom, -1.0, 1.0, 0.2);
        const Mesh fine = build_mesh(dom, -1.0, 1.0, 0.1);
        const MajorantResult rc = minimal_concave_majorant(coarse, data);
        const MajorantResult rf = minimal_concave_majorant(fine, data);
        REQUIRE(rc.info.converged);
        REQUIRE(rf.info.converged);
        for (int i = 0; i <= 20; ++i) {
            for (int j = 1; j < 5; ++j) {
                const double x = -0.8 + 1.6 * i / 20.0;
                const double y = x * x + j / 5.0; // inside the strip
                const double vc = interpolate(coarse, rc.field, Vec2(x, y));
                const double vf = interpolate(fine, rf.field, Vec2(x, y));
                CHECK(vf <= vc + 2.0 * 0.2);
            }
        }
    }

    TEST_CASE("no raise is left at the reported fixed point") {
        const Domain dom = bmo_domain(1.0);
        const BoundaryData data = data_for(dom, "power p=2");
        const Mesh mesh = build_mesh(dom, -1.0, 1.0, 0.2);
        const MajorantResult res = minimal_concave_majorant(mesh, data);
        REQUIRE(res.info.converged);
        double scale = 1.0;
        for (double v : res.field.values) scale = std::max(scale, std::abs(v));
        CHECK(local_concavity_violation(mesh, data, res.field) <= 1e-7 * scale);
    }

    TEST_CASE("ceiling caps and pins runaway boundary data") {
        const Domain dom = bmo_domain(0.5);
        const BoundaryData data = data_for(dom, "exp");
        const Mesh mesh = build_mesh(dom, -2.0, 2.0, 0.1);
        SweepOptions opts;
        opts.ceiling = 1.5; // exp(2) ~ 7.39 exceeds it near the window ends
        const MajorantResult res = minimal_concave_majorant(mesh, data, opts);
        CHECK(res.info.pinned_count > 0);
        int pinned = 0;
        for (int i = 0; i < mesh.node_count(); ++i) {
            CHECK(res.field.values[i] <= 1.5 + 1e-12);
            if (res.field.pinned[i]) ++pinned;
        }
        CHECK(pinned == res.info.pinned_count);
    }

    TEST_CASE("interpolation reproduces node values") {
        const Domain dom = bmo_domain(1.0);
        const BoundaryData data = data_for(dom, "power p=2");
        const Mesh mesh = build_mesh(dom, -1.0, 1.0, 0.2);
        const MajorantResult res = minimal_concave_majorant(mesh, data);
        for (int i = 0; i < mesh.node_count(); i += 7) {
            const double v = interpolate(mesh, res.field, mesh.nodes[i].pos);
            CHECK(v == doctest::Approx(res.field.values[i]).epsilon(1e-10));
        }
    }

    TEST_CASE("collapsed annulus reduces to the data itself") {
        const Domain dom = ap_domain(1.0, -1.0, 1.0); // Q = 1: domain is the curve
        const BoundaryData data = data_for(dom, "power p=1");
        const Mesh mesh = build_mesh(dom, -1.0, 1.0, 0.1);
        const MajorantResult res = minimal_concave_majorant(mesh, data);
        CHECK(res.info.converged);
        CHECK(res.info.sweeps == 1);
        for (int c = 0; c < mesh.column_count(); ++c) {
            const int i = mesh.column_begin[c];
            CHECK(res.field.values[i] ==
                  doctest::Approx(data.value(mesh.column_t[c])).epsilon(1e-12));
        }
    }

} // TEST_SUITE
