#include "bellman2d/presets.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bellman2d/simulate.hpp"

namespace bellman2d {

// ===========================================================================
// Domain builders
// ===========================================================================

Domain bmo_domain(double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("bmo_domain: epsilon must be positive");
    const double e2 = epsilon * epsilon;

    Domain dom;
    dom.name = "bmo";
    dom.meta = {{"epsilon", epsilon}};
    dom.vertically_convex = true;

    dom.outer.eval = [](double t) { return Vec2(t, t * t); };
    dom.outer.d1 = [](double t) { return Vec2(1.0, 2.0 * t); };
    dom.outer.d2 = [](double) { return Vec2(0.0, 2.0); };
    dom.outer.d3 = [](double) { return Vec2(0.0, 0.0); };
    dom.outer.param_of_point = [](const Vec2& x) { return x.x(); };

    dom.inner = dom.outer;
    dom.inner.eval = [e2](double t) { return Vec2(t, t * t + e2); };

    dom.outer_region.level = [](const Vec2& x) { return x.y() - x.x() * x.x(); };
    dom.inner_region.level = [e2](const Vec2& x) { return x.y() - x.x() * x.x() - e2; };
    return dom;
}

Domain ap_domain(double p1, double p2, double Q) {
    if (p1 == 0.0 || p2 == 0.0 || !(p1 > p2))
        throw InvalidExponents("ap_domain: need nonzero exponents with p1 > p2");
    if (!(Q >= 1.0)) throw std::invalid_argument("ap_domain: need Q >= 1");

    // Domain-on-the-left needs the parameter to run the right way; the
    // exponential reparametrization s = e^(sigma u) keeps derivatives exact.
    const double sigma = (p1 * p2 < 0.0) ? 1.0 : -1.0;
    const double lnQ = std::log(Q);

    Domain dom;
    dom.name = "ap";
    dom.meta = {{"p1", p1}, {"p2", p2}, {"Q", Q}, {"sigma", sigma}};
    dom.vertically_convex = true;

    auto curve = [sigma, p1, p2](double scale1) {
        BoundaryCurve c;
        const double a1 = sigma * p1, a2 = sigma * p2;
        c.eval = [=](double u) { return Vec2(scale1 * std::exp(a1 * u), std::exp(a2 * u)); };
        c.d1 = [=](double u) {
            return Vec2(scale1 * a1 * std::exp(a1 * u), a2 * std::exp(a2 * u));
        };
        c.d2 = [=](double u) {
            return Vec2(scale1 * a1 * a1 * std::exp(a1 * u), a2 * a2 * std::exp(a2 * u));
        };
        c.d3 = [=](double u) {
            return Vec2(scale1 * a1 * a1 * a1 * std::exp(a1 * u),
                        a2 * a2 * a2 * std::exp(a2 * u));
        };
        return c;
    };

    dom.outer = curve(1.0);
    dom.outer.param_of_point = [sigma, p1](const Vec2& x) {
        return std::log(std::max(x.x(), 1e-300)) / (sigma * p1);
    };
    dom.inner = curve(std::pow(Q, p1));
    dom.inner.param_of_point = [sigma, p2](const Vec2& x) {
        return std::log(std::max(x.y(), 1e-300)) / (sigma * p2);
    };

    auto log_level = [p1, p2](const Vec2& x) {
        if (x.x() <= 0.0 || x.y() <= 0.0) return -1e30;
        return std::log(x.x()) / p1 - std::log(x.y()) / p2;
    };
    dom.outer_region.level = log_level;
    dom.inner_region.level = [log_level, lnQ](const Vec2& x) {
        const double v = log_level(x);
        return v <= -1e29 ? v : v - lnQ;
    };
    return dom;
}

double ap_scalar_of_point(double p1, double p2, const Vec2& x) {
    (void)p2;
    return std::pow(x.x(), 1.0 / p1);
}

Domain reverse_jensen_domain(const std::function<double(double)>& phi,
                             const std::function<double(double)>& phi_d1,
                             const std::function<double(double)>& phi_d2,
                             const std::function<double(double)>& phi_d3, double Q,
                             double t_lo, double t_hi) {
    if (!(Q > 1.0)) throw std::invalid_argument("reverse_jensen_domain: need Q > 1");

    const double lo = std::isfinite(t_lo) ? t_lo : -8.0;
    const double hi = std::isfinite(t_hi) ? t_hi : 8.0;
    for (int i = 0; i <= 64; ++i) {
        const double t = lo + (hi - lo) * i / 64.0;
        if (!(phi(t) > 0.0)) throw NotConvex("reverse_jensen_domain: phi must be positive");
        if (phi_d2(t) < -1e-9) throw NotConvex("reverse_jensen_domain: phi must be convex");
    }

    Domain dom;
    dom.name = "reverse_jensen";
    dom.meta = {{"Q", Q}};
    dom.vertically_convex = true;
    dom.outer.param_lo = t_lo;
    dom.outer.param_hi = t_hi;

    auto graph = [&](double scale) {
        BoundaryCurve c;
        c.param_lo = t_lo;
        c.param_hi = t_hi;
        c.eval = [=](double t) { return Vec2(t, scale * phi(t)); };
        c.d1 = [=](double t) { return Vec2(1.0, scale * phi_d1(t)); };
        c.d2 = [=](double t) { return Vec2(0.0, scale * phi_d2(t)); };
        c.d3 = [=](double t) { return Vec2(0.0, scale * phi_d3(t)); };
        c.param_of_point = [](const Vec2& x) { return x.x(); };
        return c;
    };
    dom.outer = graph(1.0);
    dom.inner = graph(Q);
    dom.outer_region.level = [phi](const Vec2& x) { return x.y() - phi(x.x()); };
    dom.inner_region.level = [phi, Q](const Vec2& x) { return x.y() - Q * phi(x.x()); };
    return dom;
}

Domain disks_domain(double r0, double r1) {
    if (!(r0 > r1) || !(r1 > 0.0))
        throw std::invalid_argument("disks_domain: need r0 > r1 > 0");

    Domain dom;
    dom.name = "disks";
    dom.meta = {{"r0", r0}, {"r1", r1}};
    dom.vertically_convex = false;

    auto circle = [](double r) {
        BoundaryCurve c;
        c.eval = [r](double t) { return Vec2(r * std::cos(t), r * std::sin(t)); };
        c.d1 = [r](double t) { return Vec2(-r * std::sin(t), r * std::cos(t)); };
        c.d2 = [r](double t) { return Vec2(-r * std::cos(t), -r * std::sin(t)); };
        c.d3 = [r](double t) { return Vec2(r * std::sin(t), -r * std::cos(t)); };
        c.param_of_point = [](const Vec2& x) { return std::atan2(x.y(), x.x()); };
        return c;
    };
    dom.outer = circle(r0);
    dom.inner = circle(r1);
    dom.outer_region.level = [r0](const Vec2& x) { return r0 * r0 - x.squaredNorm(); };
    dom.inner_region.level = [r1](const Vec2& x) { return r1 * r1 - x.squaredNorm(); };
    return dom;
}

// ===========================================================================
// Boundary data
// ===========================================================================

double BoundaryData::lower_bound(double t_lo, double t_hi, int samples) const {
    double best = kInf;
    for (int i = 0; i <= samples; ++i) {
        const double t = t_lo + (t_hi - t_lo) * i / samples;
        best = std::min(best, value(t));
    }
    return best;
}

DataSpec parse_data_spec(const std::string& text) {
    DataSpec spec;
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) {
            if (spec.kind.empty())
                spec.kind = token;
            else
                throw std::invalid_argument("data spec: stray token '" + token + "'");
            continue;
        }
        const std::string key = token.substr(0, eq);
        const std::string val = token.substr(eq + 1);
        if (key == "f" || key == "kind") {
            spec.kind = val;
            continue;
        }
        try {
            size_t used = 0;
            const double d = std::stod(val, &used);
            if (used != val.size()) throw std::invalid_argument(val);
            spec.params[key] = d;
        } catch (const std::exception&) {
            throw std::invalid_argument("data spec: bad numeric value '" + token + "'");
        }
    }
    if (spec.kind.empty()) throw std::invalid_argument("data spec: missing kind");
    return spec;
}

namespace {

double param_or(const DataSpec& spec, const std::string& key, double fallback) {
    const auto it = spec.params.find(key);
    return it == spec.params.end() ? fallback : it->second;
}

// x^e with a zero coefficient short-circuit so 0 * 0^(-1) never appears.
double power_term(double coeff, double x, double e) {
    if (coeff == 0.0) return 0.0;
    return coeff * std::pow(x, e);
}

struct ScalarMap {
    std::function<double(double)> v, d1, d2, d3;
};

// Canonical scalar coordinate of the outer parametrization: the parameter
// itself except for the ap preset, where it is s = e^(sigma u) = x1^(1/p1).
ScalarMap canonical_scalar(const Domain& dom) {
    ScalarMap m;
    if (dom.name == "ap") {
        const double sigma = dom.meta.at("sigma");
        m.v = [sigma](double u) { return std::exp(sigma * u); };
        m.d1 = [sigma](double u) { return sigma * std::exp(sigma * u); };
        m.d2 = [sigma](double u) { return std::exp(sigma * u); };
        m.d3 = [sigma](double u) { return sigma * std::exp(sigma * u); };
    } else {
        m.v = [](double t) { return t; };
        m.d1 = [](double) { return 1.0; };
        m.d2 = [](double) { return 0.0; };
        m.d3 = [](double) { return 0.0; };
    }
    return m;
}

struct ScalarFunc {
    std::function<double(double)> v, d1, d2, d3;
    bool smooth = true;
};

ScalarFunc build_scalar_func(const DataSpec& spec) {
    ScalarFunc f;
    if (spec.kind == "affine") {
        const double c0 = param_or(spec, "c0", 0.0);
        const double c1 = param_or(spec, "c1", 1.0);
        f.v = [=](double x) { return c0 + c1 * x; };
        f.d1 = [=](double) { return c1; };
        f.d2 = [](double) { return 0.0; };
        f.d3 = [](double) { return 0.0; };
    } else if (spec.kind == "power") {
        const double p = param_or(spec, "p", 2.0);
        const double sign = param_or(spec, "sign", 1.0);
        f.v = [=](double x) { return power_term(sign, x, p); };
        f.d1 = [=](double x) { return power_term(sign * p, x, p - 1.0); };
        f.d2 = [=](double x) { return power_term(sign * p * (p - 1.0), x, p - 2.0); };
        f.d3 = [=](double x) {
            return power_term(sign * p * (p - 1.0) * (p - 2.0), x, p - 3.0);
        };
    } else if (spec.kind == "exp") {
        const double lambda = param_or(spec, "lambda", 1.0);
        const double amp = param_or(spec, "amp", 1.0);
        f.v = [=](double x) { return amp * std::exp(lambda * x); };
        f.d1 = [=](double x) { return amp * lambda * std::exp(lambda * x); };
        f.d2 = [=](double x) { return amp * lambda * lambda * std::exp(lambda * x); };
        f.d3 = [=](double x) { return amp * lambda * lambda * lambda * std::exp(lambda * x); };
    } else if (spec.kind == "sin") {
        const double omega = param_or(spec, "omega", 1.0);
        const double amp = param_or(spec, "amp", 1.0);
        const double phase = param_or(spec, "phase", 0.0);
        f.v = [=](double x) { return amp * std::sin(omega * x + phase); };
        f.d1 = [=](double x) { return amp * omega * std::cos(omega * x + phase); };
        f.d2 = [=](double x) { return -amp * omega * omega * std::sin(omega * x + phase); };
        f.d3 = [=](double x) {
            return -amp * omega * omega * omega * std::cos(omega * x + phase);
        };
    } else if (spec.kind == "indicator") {
        const double a = param_or(spec, "a", 1.0);
        f.smooth = false;
        f.v = [=](double x) { return x >= a ? 1.0 : 0.0; };
        f.d1 = [](double) { return 0.0; };
        f.d2 = [](double) { return 0.0; };
        f.d3 = [](double) { return 0.0; };
    } else {
        throw std::invalid_argument("data spec: unknown kind '" + spec.kind + "'");
    }
    return f;
}

} // namespace

BoundaryData make_boundary_data(const Domain& dom, const DataSpec& spec) {
    const ScalarFunc f = build_scalar_func(spec);
    const ScalarMap tau = canonical_scalar(dom);

    BoundaryData data;
    {
        std::ostringstream label;
        label << spec.kind;
        for (const auto& [k, v] : spec.params) label << " " << k << "=" << v;
        data.label = label.str();
    }
    data.smooth_c3 = f.smooth;
    data.value = [f, tau](double t) { return f.v(tau.v(t)); };
    data.d1 = [f, tau](double t) { return f.d1(tau.v(t)) * tau.d1(t); };
    data.d2 = [f, tau](double t) {
        const double x = tau.v(t), x1 = tau.d1(t);
        return f.d2(x) * x1 * x1 + f.d1(x) * tau.d2(t);
    };
    data.d3 = [f, tau](double t) {
        const double x = tau.v(t), x1 = tau.d1(t), x2 = tau.d2(t);
        return f.d3(x) * x1 * x1 * x1 + 3.0 * f.d2(x) * x1 * x2 + f.d1(x) * tau.d3(t);
    };
    return data;
}

// ===========================================================================
// Class correspondence
// ===========================================================================

namespace {

StepFunction random_step_function(std::mt19937_64& rng, double center, double spread) {
    std::uniform_int_distribution<int> pieces_dist(1, 6);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);

    const int m = pieces_dist(rng);
    StepFunction phi;
    phi.breakpoints.push_back(0.0);
    std::vector<double> cuts;
    for (int i = 0; i + 1 < m; ++i) cuts.push_back(unif(rng));
    std::sort(cuts.begin(), cuts.end());
    for (double c : cuts)
        if (c > phi.breakpoints.back() + 1e-6) phi.breakpoints.push_back(c);
    phi.breakpoints.push_back(1.0);
    for (size_t i = 0; i + 1 < phi.breakpoints.size(); ++i)
        phi.params.push_back(center + spread * normal(rng));
    return phi;
}

// Scalar-side membership: the class condition evaluated directly from the
// parameter values of the step function over the same scan grid the
// geometric check uses.  Returns the worst margin in level-function units.
double scalar_margin(const Domain& dom, const StepFunction& phi, int grid_per_piece) {
    std::vector<double> grid;
    for (size_t i = 0; i + 1 < phi.breakpoints.size(); ++i) {
        const double a = phi.breakpoints[i], b = phi.breakpoints[i + 1];
        for (int k = 0; k < grid_per_piece; ++k)
            grid.push_back(a + (b - a) * k / grid_per_piece);
    }
    grid.push_back(1.0);
    std::sort(grid.begin(), grid.end());

    // prefix integrals of the scalar features
    const bool bmo = dom.name == "bmo";
    const double p1 = bmo ? 0.0 : dom.meta.at("p1");
    const double p2 = bmo ? 0.0 : dom.meta.at("p2");
    const double sigma = bmo ? 0.0 : dom.meta.at("sigma");
    const double eps = bmo ? dom.meta.at("epsilon") : 0.0;
    const double lnQ = bmo ? 0.0 : std::log(dom.meta.at("Q"));

    auto features = [&](double t) {
        if (bmo) return Vec2(t, t * t); // (psi, psi^2)
        const double s = std::exp(sigma * t);
        return Vec2(std::pow(s, p1), std::pow(s, p2)); // (psi^p1, psi^p2)
    };

    std::vector<Vec2> prefix(grid.size(), Vec2::Zero());
    for (size_t i = 1; i < grid.size(); ++i) {
        const double a = grid[i - 1], b = grid[i];
        size_t piece = 0;
        while (phi.breakpoints[piece + 1] <= a + 1e-15 &&
               piece + 2 < phi.breakpoints.size())
            ++piece;
        prefix[i] = prefix[i - 1] + (b - a) * features(phi.params[piece]);
    }

    double worst = kInf;
    for (size_t i = 0; i < grid.size(); ++i) {
        for (size_t j = i + 1; j < grid.size(); ++j) {
            const double len = grid[j] - grid[i];
            if (len < 1e-12) continue;
            const Vec2 avg = (prefix[j] - prefix[i]) / len;
            double margin;
            if (bmo) {
                const double osc = avg.y() - avg.x() * avg.x();
                margin = eps * eps - osc;
            } else {
                margin = lnQ - (std::log(avg.x()) / p1 - std::log(avg.y()) / p2);
            }
            worst = std::min(worst, margin);
        }
    }
    return worst;
}

} // namespace

CorrespondenceResult class_correspondence_check(const std::string& preset, double preset_a,
                                                double preset_b, double preset_c, int count,
                                                unsigned seed, double tie_tol) {
    Domain dom;
    double center = 0.0, spread = 1.0;
    if (preset == "bmo") {
        dom = bmo_domain(preset_a);
        spread = 1.2 * preset_a;
    } else if (preset == "ap") {
        dom = ap_domain(preset_a, preset_b, preset_c);
        spread = 0.8 * std::log(preset_c) / std::max(1.0, std::abs(preset_a - preset_b));
        if (spread <= 0.0) spread = 0.1;
    } else {
        throw std::invalid_argument("class_correspondence_check: unsupported preset");
    }

    std::mt19937_64 rng(seed);
    CorrespondenceResult out;
    out.total = count;
    const int grid_per_piece = 8;
    for (int i = 0; i < count; ++i) {
        const StepFunction phi = random_step_function(rng, center, spread);
        const MembershipReport geo = membership_check(dom, phi, grid_per_piece);
        const double scal = scalar_margin(dom, phi, grid_per_piece);
        if (std::abs(geo.worst_margin) < tie_tol || std::abs(scal) < tie_tol) {
            ++out.ties_excluded;
            continue;
        }
        const bool member_geo = geo.ok;
        const bool member_scal = scal >= 0.0;
        if (member_geo == member_scal) ++out.agreed;
    }
    const int effective = out.total - out.ties_excluded;
    out.agreement_rate = effective > 0 ? static_cast<double>(out.agreed) / effective : 1.0;
    return out;
}

} // namespace bellman2d
