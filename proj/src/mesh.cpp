#include "bellman2d/mesh.hpp"

#include <algorithm>
#include <cmath>

namespace bellman2d {

namespace {

struct ColumnSeed {
    double t = 0.0;
    double x = 0.0;
    double y_outer = 0.0;
    double y_inner = 0.0;
    double dir = 1.0; ///< vertical direction from the outer point into the domain
    bool inner_found = false;
};

// Vertical crossing of the inner boundary above/below the outer point.
bool find_inner_crossing(const Domain& dom, double x, double y0, double dir, double step,
                         double cap, double& y_inner) {
    auto level = [&](double y) { return dom.inner_region.level(Vec2(x, y)); };
    if (level(y0) >= -dom.boundary_tol) { // collapsed annulus
        y_inner = y0;
        return true;
    }
    // geometric bracketing: the level is monotone toward the inner region
    // along the probe direction, and fixed-step marching would take
    // astronomically many iterations on presets whose ordinates span many
    // orders of magnitude
    double prev = y0;
    for (double off = step; off <= cap; off *= 1.6) {
        const double y = y0 + dir * off;
        if (level(y) >= 0.0) {
            double lo = prev, hi = y;
            for (int i = 0; i < 80; ++i) {
                const double mid = 0.5 * (lo + hi);
                (level(mid) < 0.0 ? lo : hi) = mid;
            }
            y_inner = 0.5 * (lo + hi);
            return true;
        }
        prev = y;
    }
    return false;
}

} // namespace

Mesh build_mesh(const Domain& dom, double t_lo, double t_hi, double resolution,
                const MeshOptions& opts) {
    if (!dom.vertically_convex)
        throw std::invalid_argument("build_mesh: domain is not vertically convex");
    if (!(resolution > 0.0)) throw std::invalid_argument("build_mesh: resolution must be > 0");
    if (!(t_lo < t_hi)) throw std::invalid_argument("build_mesh: empty parameter window");

    Mesh mesh;
    mesh.domain = dom;
    mesh.resolution = resolution;
    mesh.t_lo = t_lo;
    mesh.t_hi = t_hi;

    // ---- outer-boundary samples at roughly uniform x1 spacing -------------
    std::vector<double> params;
    {
        double t = std::max(t_lo, dom.outer.param_lo);
        const double hi = std::min(t_hi, dom.outer.param_hi);
        const double span = hi - t;
        if (!(span > 0.0)) throw std::invalid_argument("build_mesh: window misses the curve");
        while (true) {
            params.push_back(t);
            const double speed = std::abs(dom.outer.d1(t).x());
            double dt = resolution / std::max(speed, 1e-12);
            dt = std::clamp(dt, 1e-4 * span, 0.25 * span);
            t += dt;
            if (t >= hi - 1e-12) {
                params.push_back(hi);
                break;
            }
        }
    }

    // ---- column seeds ------------------------------------------------------
    std::vector<ColumnSeed> seeds;
    const double probe = std::max(1e-9, 1e-3 * resolution);
    for (double t : params) {
        const Vec2 g = dom.outer.eval(t);
        if (dom.inner_side(g) == RegionSide::Inside) continue; // window cuts into the hole
        ColumnSeed seed;
        seed.t = t;
        seed.x = g.x();
        seed.y_outer = g.y();
        const bool up_ok = dom.contains(g + Vec2(0.0, probe));
        const bool down_ok = dom.contains(g - Vec2(0.0, probe));
        if (!up_ok && !down_ok) {
            if (dom.inner_side(g) == RegionSide::Boundary) { // collapsed annulus
                seed.dir = 1.0;
                seed.y_inner = seed.y_outer;
                seed.inner_found = true;
                seeds.push_back(seed);
            }
            continue;
        }
        seed.dir = up_ok ? 1.0 : -1.0;
        seed.inner_found = find_inner_crossing(dom, seed.x, seed.y_outer, seed.dir, resolution,
                                               1e4 * (1.0 + std::abs(seed.y_outer)),
                                               seed.y_inner);
        if (!seed.inner_found) seed.y_inner = seed.y_outer + seed.dir * 32.0 * resolution;
        seeds.push_back(seed);
    }
    std::sort(seeds.begin(), seeds.end(),
              [](const ColumnSeed& a, const ColumnSeed& b) { return a.x < b.x; });
    seeds.erase(std::unique(seeds.begin(), seeds.end(),
                            [](const ColumnSeed& a, const ColumnSeed& b) {
                                return std::abs(a.x - b.x) < 1e-12;
                            }),
                seeds.end());
    if (seeds.size() < 2) throw EmptyMesh("build_mesh: window yields fewer than two columns");

    // ---- nodes -------------------------------------------------------------
    double max_height = 0.0;
    for (size_t c = 0; c < seeds.size(); ++c) {
        const ColumnSeed& seed = seeds[c];
        mesh.column_x.push_back(seed.x);
        mesh.column_t.push_back(seed.t);
        mesh.column_begin.push_back(static_cast<int>(mesh.nodes.size()));

        const double height = std::abs(seed.y_inner - seed.y_outer);
        max_height = std::max(max_height, height);
        int segments;
        if (height < 1e-12) {
            segments = 0; // single node on both boundaries
        } else {
            segments = std::max<int>(opts.min_layers + 1,
                                     static_cast<int>(std::llround(height / resolution)));
        }
        for (int k = 0; k <= segments; ++k) {
            MeshNode node;
            node.column = static_cast<int>(c);
            node.layer = k;
            const double frac = segments == 0 ? 0.0 : static_cast<double>(k) / segments;
            node.pos = Vec2(seed.x, seed.y_outer + seed.dir * frac * height);
            node.on_outer = (k == 0);
            node.on_inner = (k == segments) && seed.inner_found;
            if (node.on_outer) node.boundary_param = seed.t;
            mesh.nodes.push_back(node);
        }
    }
    mesh.column_begin.push_back(static_cast<int>(mesh.nodes.size()));
    if (mesh.nodes.empty()) throw EmptyMesh("build_mesh: no nodes in window");

    // ---- constraint rays ---------------------------------------------------
    const double x_min = mesh.column_x.front();
    const double x_max = mesh.column_x.back();
    const double cap = opts.extent_cap > 0.0
                           ? opts.extent_cap
                           : 2.0 * (x_max - x_min + max_height) + 16.0 * resolution;
    const double march = 0.25 * resolution;

    auto admissible = [&](const Vec2& q) {
        return q.x() >= x_min - 1e-12 && q.x() <= x_max + 1e-12 && dom.contains(q);
    };

    auto clip = [&](const Vec2& p, const Vec2& d, double& t_out, MeshRayEnd& end,
                    double& bparam) {
        double t_ok = 0.0;
        double t_bad = -1.0;
        for (double t = march; t <= cap; t += march) {
            if (admissible(p + t * d)) {
                t_ok = t;
            } else {
                t_bad = t;
                break;
            }
        }
        if (t_bad < 0.0) { // never left within the cap
            t_out = t_ok;
            end = MeshRayEnd::Window;
            bparam = 0.0;
            return;
        }
        for (int i = 0; i < 60; ++i) {
            const double mid = 0.5 * (t_ok + t_bad);
            (admissible(p + mid * d) ? t_ok : t_bad) = mid;
        }
        t_out = t_ok;
        const Vec2 bad = p + t_bad * d;
        if (dom.outer_side(bad) == RegionSide::Outside) {
            end = MeshRayEnd::Outer;
            bparam = dom.outer.param_of_point(p + t_ok * d);
        } else if (dom.inner_side(bad) == RegionSide::Inside) {
            end = MeshRayEnd::Inner;
            bparam = 0.0;
        } else {
            end = MeshRayEnd::Window;
            bparam = 0.0;
        }
    };

    // The march can step over a thin incursion into the inner region near a
    // tangency.  Convexity makes the violating parameter set along the ray a
    // single interval, so a ternary search on the inner level finds it; the
    // extent is then pulled back to the entry point.
    auto repair_inner_dip = [&](const Vec2& p, const Vec2& d, double& t_out, MeshRayEnd& end,
                                double& bparam) {
        if (t_out <= 0.0) return;
        double lo = 0.0, hi = t_out;
        for (int i = 0; i < 60; ++i) {
            const double m1 = lo + (hi - lo) / 3.0;
            const double m2 = hi - (hi - lo) / 3.0;
            if (dom.inner_region.level(p + m1 * d) < dom.inner_region.level(p + m2 * d))
                lo = m1;
            else
                hi = m2;
        }
        const double t_peak = 0.5 * (lo + hi);
        const double fence = 0.5 * dom.boundary_tol;
        if (dom.inner_region.level(p + t_peak * d) > dom.boundary_tol) {
            // pull back to the entry point of the single violating interval,
            // safely below the tolerance so the endpoint classifies as
            // boundary and not strictly inside
            double ok = 0.0, bad = t_peak;
            for (int i = 0; i < 60; ++i) {
                const double mid = 0.5 * (ok + bad);
                (dom.inner_region.level(p + mid * d) > fence ? bad : ok) = mid;
            }
            t_out = ok;
            end = MeshRayEnd::Inner;
            bparam = 0.0;
        }
        // The clip bisection parks inner-bound endpoints exactly on the
        // tolerance fence, where classification is roundoff-unstable; nudge
        // such endpoints below it.
        if (dom.inner_region.level(p) <= fence &&
            dom.inner_region.level(p + t_out * d) > fence) {
            double ok = 0.0, bad = t_out;
            for (int i = 0; i < 60; ++i) {
                const double mid = 0.5 * (ok + bad);
                (dom.inner_region.level(p + mid * d) > fence ? bad : ok) = mid;
            }
            t_out = ok;
            end = MeshRayEnd::Inner;
            bparam = 0.0;
        }
    };

    const int half_fan = std::max(4, opts.fan);
    for (const MeshNode& node : mesh.nodes) {
        mesh.ray_begin.push_back(static_cast<int>(mesh.rays.size()));

        std::vector<Vec2> dirs;
        dirs.reserve(half_fan + 2);
        for (int k = 0; k < half_fan; ++k) {
            const double theta = M_PI * k / half_fan;
            dirs.emplace_back(std::cos(theta), std::sin(theta));
        }
        for (const Vec2& gd : graze_directions(dom, node.pos)) {
            // unoriented: fold antiparallel duplicates
            bool dup = false;
            for (const Vec2& d : dirs)
                if (std::abs(cross2(d, gd)) < 1e-12) dup = true;
            if (!dup) dirs.push_back(gd.normalized());
        }

        for (const Vec2& d : dirs) {
            MeshRay ray;
            ray.dir = d;
            clip(node.pos, d, ray.t_plus, ray.end_plus, ray.bparam_plus);
            clip(node.pos, -d, ray.t_minus, ray.end_minus, ray.bparam_minus);
            repair_inner_dip(node.pos, d, ray.t_plus, ray.end_plus, ray.bparam_plus);
            repair_inner_dip(node.pos, -d, ray.t_minus, ray.end_minus, ray.bparam_minus);
            mesh.rays.push_back(ray);
        }
    }
    mesh.ray_begin.push_back(static_cast<int>(mesh.rays.size()));
    return mesh;
}

} // namespace bellman2d
