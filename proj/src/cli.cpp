#include "bellman2d/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>

#include "bellman2d/concavify.hpp"
#include "bellman2d/conditions.hpp"
#include "bellman2d/curve.hpp"
#include "bellman2d/force.hpp"
#include "bellman2d/io.hpp"
#include "bellman2d/lace.hpp"
#include "bellman2d/mesh.hpp"
#include "bellman2d/presets.hpp"
#include "bellman2d/simulate.hpp"

namespace bellman2d {

namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string preset = "bmo";
    std::string domain_file;
    std::string f_spec = "power p=2";
    std::string phi = "exp";
    std::string window;
    std::string out_dir = "out";
    std::string sweep_mode = "gauss-seidel";
    std::string config;
    double epsilon = 1.0;
    double p1 = 1.0, p2 = -1.0, Q = 2.0;
    double r0 = 2.0, r1 = 1.0;
    double resolution = 0.05;
    int budget = 2000;
    int grid = 3;
    unsigned seed = 1;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--preset", c.preset, "domain preset: bmo | ap | reverse_jensen | disks");
    cmd->add_option("--domain-file", c.domain_file, "key=value domain description file");
    cmd->add_option("--f", c.f_spec, "boundary data spec, e.g. 'exp lambda=1'");
    cmd->add_option("--phi", c.phi, "convex profile for reverse_jensen: exp | power:<p>");
    cmd->add_option("--epsilon", c.epsilon, "bmo strip half-width parameter");
    cmd->add_option("--p1", c.p1, "first exponent (ap preset)");
    cmd->add_option("--p2", c.p2, "second exponent (ap preset)");
    cmd->add_option("--Q", c.Q, "class constant (ap / reverse_jensen)");
    cmd->add_option("--r0", c.r0, "outer radius (disks preset)");
    cmd->add_option("--r1", c.r1, "inner radius (disks preset)");
    cmd->add_option("--window", c.window, "parameter window lo:hi");
    cmd->add_option("--resolution", c.resolution, "mesh resolution");
    cmd->add_option("--budget", c.budget, "candidate budget per point");
    cmd->add_option("--grid", c.grid, "interior evaluation grid is N x N");
    cmd->add_option("--seed", c.seed, "random seed");
    cmd->add_option("--out-dir", c.out_dir, "output directory");
    cmd->add_option("--sweep-mode", c.sweep_mode, "gauss-seidel | jacobi");
    cmd->add_option("--config", c.config, "key=value file with flag defaults");
}

double to_double(const std::string& key, const std::string& val) {
    try {
        size_t used = 0;
        const double d = std::stod(val, &used);
        if (used != val.size()) throw std::invalid_argument(val);
        return d;
    } catch (const std::exception&) {
        throw UsageError("bad numeric value for " + key + ": '" + val + "'");
    }
}

// Config files and --config provide defaults; explicit flags still win
// because they are parsed afterwards.
void apply_config(Common& c, const std::map<std::string, std::string>& kv) {
    for (const auto& [key, val] : kv) {
        if (key == "preset") c.preset = val;
        else if (key == "domain_file") c.domain_file = val;
        else if (key == "f") c.f_spec = val;
        else if (key == "phi") c.phi = val;
        else if (key == "window") c.window = val;
        else if (key == "out_dir") c.out_dir = val;
        else if (key == "sweep_mode") c.sweep_mode = val;
        else if (key == "epsilon") c.epsilon = to_double(key, val);
        else if (key == "p1") c.p1 = to_double(key, val);
        else if (key == "p2") c.p2 = to_double(key, val);
        else if (key == "Q") c.Q = to_double(key, val);
        else if (key == "r0") c.r0 = to_double(key, val);
        else if (key == "r1") c.r1 = to_double(key, val);
        else if (key == "resolution") c.resolution = to_double(key, val);
        else if (key == "budget") c.budget = static_cast<int>(to_double(key, val));
        else if (key == "grid") c.grid = static_cast<int>(to_double(key, val));
        else if (key == "seed") c.seed = static_cast<unsigned>(to_double(key, val));
        else throw UsageError("unknown key '" + key + "' in config/domain file");
    }
}

// Custom domains referred to by name from domain files (preset=custom).
Domain custom_domain(const std::string& name) {
    if (name == "synthetic_bounded_inner") {
        // parabola outer region, small disk inner region: every admissible ray
        // direction fails the translation condition
        Domain dom = bmo_domain(1.0);
        dom.name = "synthetic_bounded_inner";
        const Vec2 center(0.0, 2.0);
        const double r = 0.5;
        dom.inner.eval = [=](double t) { return center + r * Vec2(std::cos(t), std::sin(t)); };
        dom.inner.d1 = [=](double t) { return r * Vec2(-std::sin(t), std::cos(t)); };
        dom.inner.d2 = [=](double t) { return r * Vec2(-std::cos(t), -std::sin(t)); };
        dom.inner.d3 = [=](double t) { return r * Vec2(std::sin(t), -std::cos(t)); };
        dom.inner.param_of_point = [=](const Vec2& x) {
            return std::atan2(x.y() - center.y(), x.x() - center.x());
        };
        dom.inner_region.level = [=](const Vec2& x) {
            return r * r - (x - center).squaredNorm();
        };
        dom.vertically_convex = false;
        return dom;
    }
    throw UsageError("unknown custom domain '" + name + "'");
}

struct Problem {
    Domain dom;
    BoundaryData data;
    double t_lo = 0.0, t_hi = 0.0;
    bool degenerate = false; ///< collapsed annulus (ap with Q = 1)
};

std::pair<double, double> parse_window(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw UsageError("window must be lo:hi, got '" + text + "'");
    const double lo = to_double("window", text.substr(0, colon));
    const double hi = to_double("window", text.substr(colon + 1));
    if (!(lo < hi)) throw UsageError("window must satisfy lo < hi");
    return {lo, hi};
}

Problem make_problem(Common& c) {
    if (!c.domain_file.empty()) {
        std::map<std::string, std::string> kv;
        try {
            kv = parse_kv_file(c.domain_file);
        } catch (const std::exception& e) {
            throw UsageError(std::string("domain file: ") + e.what());
        }
        if (!kv.count("preset")) throw UsageError("domain file: missing preset=");
        if (kv.at("preset") == "custom") {
            if (!kv.count("name")) throw UsageError("domain file: custom needs name=");
        }
        std::map<std::string, std::string> rest = kv;
        rest.erase("name");
        apply_config(c, rest);
        if (kv.at("preset") == "custom") c.preset = "custom:" + kv.at("name");
    }

    Problem prob;
    double default_lo = -2.0, default_hi = 2.0;
    if (c.preset == "bmo") {
        prob.dom = bmo_domain(c.epsilon);
    } else if (c.preset == "ap") {
        prob.dom = ap_domain(c.p1, c.p2, c.Q);
        prob.degenerate = c.Q == 1.0;
        default_lo = -2.5;
        default_hi = 2.5;
    } else if (c.preset == "reverse_jensen") {
        if (c.phi == "exp") {
            auto e = [](double t) { return std::exp(t); };
            prob.dom = reverse_jensen_domain(e, e, e, e, c.Q);
        } else if (c.phi.rfind("power:", 0) == 0) {
            const double p = to_double("phi", c.phi.substr(6));
            auto d0 = [p](double t) { return std::pow(t, p); };
            auto d1 = [p](double t) { return p * std::pow(t, p - 1); };
            auto d2 = [p](double t) { return p * (p - 1) * std::pow(t, p - 2); };
            auto d3 = [p](double t) { return p * (p - 1) * (p - 2) * std::pow(t, p - 3); };
            const auto w = parse_window(c.window.empty() ? "0.5:4" : c.window);
            prob.dom = reverse_jensen_domain(d0, d1, d2, d3, c.Q, w.first, w.second);
            default_lo = w.first;
            default_hi = w.second;
        } else {
            throw UsageError("unknown phi '" + c.phi + "'");
        }
    } else if (c.preset == "disks") {
        prob.dom = disks_domain(c.r0, c.r1);
        default_lo = 0.0;
        default_hi = 2.0 * M_PI;
    } else if (c.preset.rfind("custom:", 0) == 0) {
        prob.dom = custom_domain(c.preset.substr(7));
    } else {
        throw UsageError("unknown preset '" + c.preset + "'");
    }

    if (!c.window.empty()) {
        const auto w = parse_window(c.window);
        prob.t_lo = w.first;
        prob.t_hi = w.second;
    } else {
        prob.t_lo = default_lo;
        prob.t_hi = default_hi;
    }

    try {
        prob.data = make_boundary_data(prob.dom, parse_data_spec(c.f_spec));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return prob;
}

SweepOptions sweep_options(const Common& c) {
    SweepOptions opts;
    if (c.sweep_mode == "jacobi")
        opts.mode = SweepMode::Jacobi;
    else if (c.sweep_mode == "gauss-seidel")
        opts.mode = SweepMode::GaussSeidel;
    else
        throw UsageError("sweep-mode must be gauss-seidel or jacobi");
    return opts;
}

std::vector<Vec2> boundary_polyline(const BoundaryCurve& curve, double lo, double hi, int n) {
    std::vector<Vec2> pts;
    for (int i = 0; i <= n; ++i) pts.push_back(curve.eval(lo + (hi - lo) * i / n));
    return pts;
}

// ---------------------------------------------------------------------------
// diagnose
// ---------------------------------------------------------------------------

int cmd_diagnose(Common& c) {
    Problem prob = make_problem(c);
    const Domain& dom = prob.dom;
    fs::create_directories(c.out_dir);
    CsvWriter csv(fs::path(c.out_dir) / "diagnose.csv",
                  {"condition", "label", "value", "verdict"});

    bool all_pass = true;
    auto emit = [&](const std::string& cond, const std::string& label, double value,
                    Verdict v) {
        csv.row({cond, label, value, to_string(v)});
        if (v != Verdict::Pass) all_pass = false;
    };

    if (prob.degenerate) {
        emit("degenerate", "annulus collapsed to the boundary curve (Q = 1)", c.Q,
             Verdict::Inconclusive);
    }

    // derivative consistency of the supplied curves
    const std::pair<const BoundaryCurve*, const char*> curves[] = {{&dom.outer, "outer"},
                                                                   {&dom.inner, "inner"}};
    for (const auto& [curve, label] : curves) {
        const double lo = std::max(prob.t_lo, curve->param_lo) + 1e-6;
        const double hi = std::min(prob.t_hi, curve->param_hi) - 1e-6;
        const DerivativeCheck chk = check_derivatives(*curve, lo, hi);
        const double worst =
            std::max({chk.max_d1_error, chk.max_d2_error, chk.max_d3_error});
        emit("smoothness", std::string(label) + " max FD mismatch", worst,
             chk.passed ? Verdict::Pass : Verdict::Fail);
    }

    {
        const ConditionReport rep = check_unbounded(dom, prob.t_lo, prob.t_hi);
        for (const ConditionRow& row : rep.rows)
            emit(rep.condition, row.label, row.value, row.verdict);
    }
    {
        const ConditionReport rep = check_ray_condition(dom);
        emit(rep.condition, "translated-ray coverage",
             rep.rows.empty() ? 0.0 : rep.rows.back().value, rep.verdict);
    }

    if (!prob.degenerate) {
        const double s_lo = std::max(prob.t_lo, dom.inner.param_lo);
        const double s_hi = std::min(prob.t_hi, dom.inner.param_hi);
        const double s0 = 0.5 * (s_lo + s_hi);
        for (TangentSide side : {TangentSide::Right, TangentSide::Left}) {
            const char* label = side == TangentSide::Right ? "right" : "left";
            try {
                const DivergenceReport rep = check_divergence_condition(dom, side, s0, 48.0);
                emit("divergence", std::string(label) + " partial integral", rep.total,
                     rep.verdict == Divergence::Diverges ? Verdict::Pass
                                                         : Verdict::Inconclusive);
            } catch (const NumericError& e) {
                std::cout << "divergence probe (" << label << ") failed: " << e.what() << "\n";
                emit("divergence", std::string(label) + " probe error", 0.0,
                     Verdict::Inconclusive);
            }
        }

        LiftedCurve curve{&dom, prob.data};
        try {
            const auto changes = torsion_sign_changes(curve, prob.t_lo, prob.t_hi);
            int cups = 0;
            for (const SignChange& ch : changes) cups += ch.is_cup_candidate() ? 1 : 0;
            emit("torsion", "sign changes in window", static_cast<double>(changes.size()),
                 Verdict::Pass);
            emit("torsion", "cup candidates", static_cast<double>(cups), Verdict::Pass);
        } catch (const TooManyChanges& e) {
            std::cout << e.what() << "\n";
            emit("torsion", "sign changes in window", -1.0, Verdict::Inconclusive);
        }

        const double t_mid = 0.5 * (prob.t_lo + prob.t_hi);
        for (TangentSide side : {TangentSide::Right, TangentSide::Left}) {
            const char* label = side == TangentSide::Right ? "right" : "left";
            try {
                const ForceValue fv = force_integral(dom, prob.data, t_mid, side);
                emit("force", std::string(label) + " value at window center", fv.value,
                     fv.converged ? Verdict::Pass : Verdict::Inconclusive);
            } catch (const NumericError& e) {
                std::cout << "force probe (" << label << ") failed: " << e.what() << "\n";
                emit("force", std::string(label) + " probe error", 0.0,
                     Verdict::Inconclusive);
            }
        }
    }

    // domain picture with tangent samples
    {
        const auto outer = boundary_polyline(dom.outer, prob.t_lo, prob.t_hi, 256);
        const auto inner = boundary_polyline(
            dom.inner, std::max(prob.t_lo, dom.inner.param_lo),
            std::min(prob.t_hi, dom.inner.param_hi), 256);
        double x_lo = kInf, x_hi = -kInf, y_lo = kInf, y_hi = -kInf;
        for (const auto& pts : {outer, inner})
            for (const Vec2& p : pts) {
                x_lo = std::min(x_lo, p.x());
                x_hi = std::max(x_hi, p.x());
                y_lo = std::min(y_lo, p.y());
                y_hi = std::max(y_hi, p.y());
            }
        const double pad_x = 0.05 * (x_hi - x_lo) + 1e-6, pad_y = 0.05 * (y_hi - y_lo) + 1e-6;
        SvgCanvas svg(x_lo - pad_x, x_hi + pad_x, y_lo - pad_y, y_hi + pad_y);
        svg.polyline(outer, "#1f4e79", 2.0);
        svg.polyline(inner, "#a33c3c", 2.0);
        if (!prob.degenerate) {
            for (int i = 1; i < 8; ++i) {
                const double u = prob.t_lo + (prob.t_hi - prob.t_lo) * i / 8.0;
                for (TangentSide side : {TangentSide::Right, TangentSide::Left}) {
                    try {
                        const Tangent tng = tangent(dom, u, side);
                        svg.line(tng.source, tng.touch, "#3c8a3c", 1.0);
                        svg.circle(tng.touch, 2.5, "#3c8a3c");
                    } catch (const NumericError&) {
                        // skip unreachable tangents in the picture
                    }
                }
            }
        }
        svg.save(fs::path(c.out_dir) / "domain.svg");
    }

    std::cout << "diagnose: wrote " << c.out_dir << "/diagnose.csv and domain.svg\n";
    std::cout << "verdict: " << (all_pass ? "pass" : "not all conditions pass") << "\n";
    return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

int cmd_solve(Common& c) {
    if (!(c.resolution > 0.0)) throw UsageError("resolution must be positive");
    Problem prob = make_problem(c);
    const Mesh mesh = build_mesh(prob.dom, prob.t_lo, prob.t_hi, c.resolution);
    const MajorantResult result = minimal_concave_majorant(mesh, prob.data, sweep_options(c));

    fs::create_directories(c.out_dir);
    {
        CsvWriter csv(fs::path(c.out_dir) / "field.csv",
                      {"x1", "x2", "value", "pinned_at_ceiling"});
        for (int i = 0; i < mesh.node_count(); ++i)
            csv.row({mesh.nodes[i].pos.x(), mesh.nodes[i].pos.y(), result.field.values[i],
                     static_cast<long long>(result.field.pinned[i])});
    }
    {
        CsvWriter csv(fs::path(c.out_dir) / "mesh.csv",
                      {"node", "column", "layer", "x1", "x2", "on_outer", "on_inner"});
        for (int i = 0; i < mesh.node_count(); ++i) {
            const MeshNode& n = mesh.nodes[i];
            csv.row({static_cast<long long>(i), static_cast<long long>(n.column),
                     static_cast<long long>(n.layer), n.pos.x(), n.pos.y(),
                     static_cast<long long>(n.on_outer), static_cast<long long>(n.on_inner)});
        }
    }
    {
        CsvWriter csv(fs::path(c.out_dir) / "solve_log.csv",
                      {"sweeps", "final_delta", "converged", "pinned", "data_floor"});
        csv.row({static_cast<long long>(result.info.sweeps), result.info.final_delta,
                 static_cast<long long>(result.info.converged),
                 static_cast<long long>(result.info.pinned_count), result.info.data_floor});
    }
    {
        double v_lo = kInf, v_hi = -kInf;
        double x_lo = kInf, x_hi = -kInf, y_lo = kInf, y_hi = -kInf;
        for (int i = 0; i < mesh.node_count(); ++i) {
            v_lo = std::min(v_lo, result.field.values[i]);
            v_hi = std::max(v_hi, result.field.values[i]);
            x_lo = std::min(x_lo, mesh.nodes[i].pos.x());
            x_hi = std::max(x_hi, mesh.nodes[i].pos.x());
            y_lo = std::min(y_lo, mesh.nodes[i].pos.y());
            y_hi = std::max(y_hi, mesh.nodes[i].pos.y());
        }
        SvgCanvas svg(x_lo - 0.05, x_hi + 0.05, y_lo - 0.05, y_hi + 0.05);
        const double span = std::max(1e-12, v_hi - v_lo);
        for (int col = 0; col < mesh.column_count(); ++col) {
            const double w = col + 1 < mesh.column_count()
                                 ? mesh.column_x[col + 1] - mesh.column_x[col]
                                 : mesh.column_x[col] - mesh.column_x[col - 1];
            for (int i = mesh.column_begin[col]; i < mesh.column_begin[col + 1]; ++i) {
                const int layers = mesh.layers(col);
                const double h =
                    layers > 1 ? std::abs(mesh.nodes[mesh.column_begin[col] + 1].pos.y() -
                                          mesh.nodes[mesh.column_begin[col]].pos.y())
                               : 0.02;
                svg.rect(mesh.nodes[i].pos, w, h,
                         SvgCanvas::ramp((result.field.values[i] - v_lo) / span));
            }
        }
        svg.save(fs::path(c.out_dir) / "field.svg");
    }

    std::cout << "solve: " << mesh.node_count() << " nodes, " << result.info.sweeps
              << " sweeps, final delta " << result.info.final_delta
              << (result.info.converged ? "" : " (not converged)") << "\n";
    std::cout << "solve: wrote " << c.out_dir << "/field.csv, mesh.csv, solve_log.csv, field.svg\n";
    return result.info.converged ? 0 : 1;
}

// ---------------------------------------------------------------------------
// gap
// ---------------------------------------------------------------------------

int cmd_gap(Common& c) {
    if (!(c.resolution > 0.0)) throw UsageError("resolution must be positive");
    if (c.grid < 1) throw UsageError("grid must be at least 1");
    Problem prob = make_problem(c);
    const Mesh mesh = build_mesh(prob.dom, prob.t_lo, prob.t_hi, c.resolution);
    const MajorantResult result = minimal_concave_majorant(mesh, prob.data, sweep_options(c));

    fs::create_directories(c.out_dir);
    CsvWriter csv(fs::path(c.out_dir) / "gap.csv",
                  {"x1", "x2", "lower", "upper", "gap", "relative_gap", "candidates",
                   "admissible", "status"});

    const double sandwich_tol = mesh.resolution; // interpolation error scale
    bool violated = false, any_soft = !result.info.converged;
    double max_gap = 0.0, max_rel = 0.0;

    for (int i = 0; i < c.grid; ++i) {
        // columns chosen uniformly in the curve parameter, which is the
        // coordinate the window is expressed in
        const double t_target = prob.t_lo + (i + 1.0) / (c.grid + 1.0) * (prob.t_hi - prob.t_lo);
        int col = 0;
        for (int k = 1; k < mesh.column_count(); ++k)
            if (std::abs(mesh.column_t[k] - t_target) <
                std::abs(mesh.column_t[col] - t_target))
                col = k;
        const int begin = mesh.column_begin[col];
        const int layers = mesh.layers(col);
        const double y_b = mesh.nodes[begin].pos.y();
        const double y_t = mesh.nodes[begin + layers - 1].pos.y();
        for (int j = 0; j < c.grid; ++j) {
            const double frac = (j + 1.0) / (c.grid + 1.0);
            const Vec2 p(mesh.column_x[col], y_b + frac * (y_t - y_b));
            const double upper = interpolate(mesh, result.field, p);
            try {
                LowerBoundOptions lb;
                const LowerBoundResult low = lower_bound(prob.dom, prob.data, p, c.budget,
                                                         c.seed + 1000u * i + j, lb);
                const double gap = upper - low.value;
                const double rel = std::abs(gap) / std::max(1e-12, std::abs(upper));
                max_gap = std::max(max_gap, gap);
                max_rel = std::max(max_rel, rel);
                const bool bad = low.value > upper + sandwich_tol * std::max(1.0, std::abs(upper));
                violated = violated || bad;
                csv.row({p.x(), p.y(), low.value, upper, gap, rel,
                         static_cast<long long>(low.candidates),
                         static_cast<long long>(low.admissible),
                         std::string(bad ? "sandwich_violated" : "ok")});
            } catch (const NoCandidate& e) {
                any_soft = true;
                csv.row({p.x(), p.y(), -kInf, upper, kInf, kInf, 0LL, 0LL,
                         std::string("no_candidate")});
                std::cout << "point (" << p.x() << ", " << p.y() << "): " << e.what() << "\n";
            }
        }
    }
    csv.row({0.0, 0.0, 0.0, 0.0, max_gap, max_rel, 0LL, 0LL, std::string("summary_max")});

    std::cout << "gap: max gap " << max_gap << ", max relative gap " << max_rel << "\n";
    std::cout << "gap: wrote " << c.out_dir << "/gap.csv\n";
    if (violated) {
        std::cout << "gap: lower bound exceeded the majorant beyond tolerance\n";
        return 2;
    }
    return any_soft ? 1 : 0;
}

// ---------------------------------------------------------------------------
// cups
// ---------------------------------------------------------------------------

int cmd_cups(Common& c) {
    Problem prob = make_problem(c);
    LiftedCurve curve{&prob.dom, prob.data};
    fs::create_directories(c.out_dir);

    int exit_code = 0;
    std::vector<SignChange> changes;
    try {
        changes = torsion_sign_changes(curve, prob.t_lo, prob.t_hi);
    } catch (const TooManyChanges& e) {
        std::cout << e.what() << "\n";
        exit_code = 1;
    }

    {
        CsvWriter csv(fs::path(c.out_dir) / "torsion_changes.csv",
                      {"location", "before", "after", "cup_candidate"});
        for (const SignChange& ch : changes)
            csv.row({ch.location, static_cast<long long>(ch.before),
                     static_cast<long long>(ch.after),
                     static_cast<long long>(ch.is_cup_candidate())});
    }

    CsvWriter csv(fs::path(c.out_dir) / "cup_chords.csv",
                  {"origin", "a", "b", "residual", "ineq_a", "ineq_b"});
    std::vector<std::pair<Vec2, Vec2>> segments;
    for (const SignChange& ch : changes) {
        if (!ch.is_cup_candidate()) continue;
        std::vector<Chord> family;
        try {
            family = solve_cup_chords(curve, ch);
        } catch (const ContinuationStall& e) {
            std::cout << "cup at " << ch.location << ": " << e.what() << "\n";
            exit_code = std::max(exit_code, 1);
            continue;
        } catch (const ChordExitsDomain& e) {
            std::cout << "cup at " << ch.location << ": " << e.what() << "\n";
            exit_code = std::max(exit_code, 1);
            continue;
        }
        for (const Chord& chord : family) {
            csv.row({ch.location, chord.a, chord.b, chord.residual, chord.ineq_a,
                     chord.ineq_b});
            segments.emplace_back(prob.dom.outer.eval(chord.a), prob.dom.outer.eval(chord.b));
        }
        std::cout << "cup at " << ch.location << ": " << family.size() << " chords\n";
    }

    {
        const auto outer = boundary_polyline(prob.dom.outer, prob.t_lo, prob.t_hi, 256);
        const auto inner = boundary_polyline(
            prob.dom.inner, std::max(prob.t_lo, prob.dom.inner.param_lo),
            std::min(prob.t_hi, prob.dom.inner.param_hi), 256);
        double x_lo = kInf, x_hi = -kInf, y_lo = kInf, y_hi = -kInf;
        for (const auto& pts : {outer, inner})
            for (const Vec2& p : pts) {
                x_lo = std::min(x_lo, p.x());
                x_hi = std::max(x_hi, p.x());
                y_lo = std::min(y_lo, p.y());
                y_hi = std::max(y_hi, p.y());
            }
        SvgCanvas svg(x_lo - 0.1, x_hi + 0.1, y_lo - 0.1, y_hi + 0.1);
        svg.polyline(outer, "#1f4e79", 2.0);
        svg.polyline(inner, "#a33c3c", 2.0);
        for (size_t i = 0; i < segments.size(); i += std::max<size_t>(1, segments.size() / 64))
            svg.line(segments[i].first, segments[i].second, "#777777", 0.8);
        svg.save(fs::path(c.out_dir) / "cup_chords.svg");
    }

    std::cout << "cups: wrote " << c.out_dir
              << "/torsion_changes.csv, cup_chords.csv, cup_chords.svg\n";
    return exit_code;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"annular-domain concave majorants, lower bounds, and diagnostics"};
    app.name("bellman2d");
    app.require_subcommand(1);

    Common common;
    // pre-scan for --config so its values act as defaults under the flags
    for (size_t i = 0; i < args.size(); ++i) {
        std::string value;
        if (args[i] == "--config" && i + 1 < args.size())
            value = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            value = args[i].substr(9);
        if (!value.empty()) {
            try {
                apply_config(common, parse_kv_file(value));
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 64;
            }
        }
    }

    CLI::App* diagnose = app.add_subcommand("diagnose", "run admissibility diagnostics");
    CLI::App* solve = app.add_subcommand("solve", "compute the concave majorant field");
    CLI::App* gap = app.add_subcommand("gap", "compare lower bounds with the majorant");
    CLI::App* cups = app.add_subcommand("cups", "torsion sign changes and cup chords");
    for (CLI::App* cmd : {diagnose, solve, gap, cups}) add_common(cmd, common);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // prints help, exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        if (diagnose->parsed()) return cmd_diagnose(common);
        if (solve->parsed()) return cmd_solve(common);
        if (gap->parsed()) return cmd_gap(common);
        return cmd_cups(common);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 64;
    } catch (const NotConverged& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace bellman2d
