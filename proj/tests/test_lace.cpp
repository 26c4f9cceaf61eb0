#include <doctest.h>

#include <cmath>
#include <vector>

#include "bellman2d/lace.hpp"
#include "bellman2d/presets.hpp"

using namespace bellman2d;

namespace {

LiftedCurve lift(const Domain& dom, const std::string& spec) {
    return LiftedCurve{&dom, make_boundary_data(dom, parse_data_spec(spec))};
}

// Midpoint-derivative form of the cup residual specific to the parabolic
// strip: difference quotient of the data minus the mean of its endpoint
// derivatives, scaled by twice the squared chord width.
double strip_residual(const LiftedCurve& c, double a, double b) {
    const double quot = (c.data.value(b) - c.data.value(a)) / (b - a);
    const double mean = 0.5 * (c.data.d1(a) + c.data.d1(b));
    return 2.0 * (b - a) * (b - a) * (quot - mean);
}

} // namespace

TEST_SUITE("lace") {

    TEST_CASE("lifted curve derivatives are consistent") {
        const Domain dom = bmo_domain(0.5);
        const LiftedCurve c = lift(dom, "sin omega=1.3 amp=0.7");
        const double h = 1e-5;
        for (double t : {-1.0, 0.2, 1.7}) {
            const Vec3 fd1 = (c.eval(t + h) - c.eval(t - h)) / (2.0 * h);
            const Vec3 fd2 = (c.d1(t + h) - c.d1(t - h)) / (2.0 * h);
            const Vec3 fd3 = (c.d2(t + h) - c.d2(t - h)) / (2.0 * h);
            CHECK((c.d1(t) - fd1).norm() < 1e-6);
            CHECK((c.d2(t) - fd2).norm() < 1e-6);
            CHECK((c.d3(t) - fd3).norm() < 1e-6);
        }
    }

    TEST_CASE("torsion determinant is twice the third data derivative on the strip") {
        const Domain dom = bmo_domain(0.5);
        const LiftedCurve cubic = lift(dom, "power p=3");
        const LiftedCurve wave = lift(dom, "sin");
        for (int i = 0; i <= 40; ++i) {
            const double t = -2.0 + 4.0 * i / 40.0;
            CHECK(torsion_determinant(cubic, t) == doctest::Approx(12.0).epsilon(1e-10));
            CHECK(torsion_determinant(wave, t) ==
                  doctest::Approx(-2.0 * std::cos(t)).epsilon(1e-10));
        }
    }

    TEST_CASE("torsion sign tracks the third data derivative") {
        const Domain dom = bmo_domain(0.5);
        struct Case {
            const char* spec;
            double (*d3)(double);
        };
        const Case cases[] = {
            {"power p=3", [](double) { return 6.0; }},
            {"power p=4 sign=-1", [](double t) { return -24.0 * t; }},
            {"sin", [](double t) { return -std::cos(t); }},
            {"exp", [](double t) { return std::exp(t); }},
        };
        for (const auto& cs : cases) {
            const LiftedCurve c = lift(dom, cs.spec);
            for (int i = 0; i < 200; ++i) {
                const double t = -2.0 + 4.0 * i / 199.0;
                const double d3 = cs.d3(t);
                if (std::abs(d3) < 1e-6) continue; // zero-tolerance band
                CHECK(torsion_sign(c, t) == (d3 > 0.0 ? 1 : -1));
            }
        }
    }

    TEST_CASE("torsion sign changes: quartic has a single cup origin") {
        const Domain dom = bmo_domain(1.0);
        const LiftedCurve c = lift(dom, "power p=4 sign=-1");
        const auto changes = torsion_sign_changes(c, -2.0, 2.0);
        REQUIRE(changes.size() == 1);
        CHECK(std::abs(changes[0].location) < 1e-8);
        CHECK(changes[0].before == 1);
        CHECK(changes[0].after == -1);
        CHECK(changes[0].is_cup_candidate());
    }

    TEST_CASE("torsion sign changes: sine alternates, cups at the down-crossings") {
        const Domain dom = bmo_domain(1.0);
        const LiftedCurve c = lift(dom, "sin");
        // determinant -2 cos t: zeros at odd multiples of pi/2 in [-7, 7]
        const auto changes = torsion_sign_changes(c, -7.0, 7.0);
        REQUIRE(changes.size() == 4);
        const double expect[] = {-1.5 * M_PI, -0.5 * M_PI, 0.5 * M_PI, 1.5 * M_PI};
        const bool cup[] = {false, true, false, true};
        for (int i = 0; i < 4; ++i) {
            CHECK(changes[i].location == doctest::Approx(expect[i]).epsilon(1e-8));
            CHECK(changes[i].is_cup_candidate() == cup[i]);
        }
    }

    TEST_CASE("affine data has no torsion sign changes") {
        const Domain dom = bmo_domain(1.0);
        const LiftedCurve c = lift(dom, "affine c0=0.3 c1=-2");
        CHECK(torsion_sign_changes(c, -3.0, 3.0).empty());
    }

    TEST_CASE("cup residual reduces to the midpoint-derivative form on the strip") {
        const Domain dom = bmo_domain(1.0);
        for (const char* spec : {"power p=4 sign=-1", "sin"}) {
            const LiftedCurve c = lift(dom, spec);
            for (int i = 0; i < 25; ++i) {
                for (int j = 0; j < 25; ++j) {
                    const double a = -1.2 + 2.4 * i / 24.0;
                    const double b = -1.2 + 2.4 * j / 24.0;
                    if (std::abs(a - b) < 0.1) continue;
                    const double lhs = cup_equation_residual(c, a, b);
                    const double rhs = strip_residual(c, a, b);
                    CHECK(std::abs(lhs - rhs) < 1e-8 * std::max(1.0, std::abs(rhs)));
                }
            }
        }
    }

    TEST_CASE("quartic cup chords are symmetric") {
        const Domain dom = bmo_domain(1.0);
        const LiftedCurve c = lift(dom, "power p=4 sign=-1");
        for (double b : {0.3, 0.6, 1.0})
            CHECK(std::abs(cup_equation_residual(c, -b, b)) < 1e-12);
    }

    TEST_CASE("chord differential inequalities at a symmetric quartic chord") {
        const Domain dom = bmo_domain(1.0);
        const LiftedCurve c = lift(dom, "power p=4 sign=-1");
        // hand value: tangent (1, -1, 0.5), normal direction (3.5, 1, -5)
        const double expect = -4.5 / std::sqrt(38.25);
        const auto [ia, ib] = chord_differential_inequalities(c, -0.5, 0.5);
        CHECK(ia == doctest::Approx(expect).epsilon(1e-9));
        CHECK(ib == doctest::Approx(expect).epsilon(1e-9));

        // mirrored data flips the signs
        const LiftedCurve m = lift(dom, "power p=4");
        const auto [ja, jb] = chord_differential_inequalities(m, -0.5, 0.5);
        CHECK(ja > 0.0);
        CHECK(jb > 0.0);
    }

    TEST_CASE("affine data makes every chord coplanar") {
        const Domain dom = bmo_domain(1.0);
        const LiftedCurve c = lift(dom, "affine c0=1 c1=2");
        CHECK(std::abs(cup_equation_residual(c, -0.5, 0.5)) < 1e-10);
        const auto [ia, ib] = chord_differential_inequalities(c, -0.5, 0.5);
        CHECK(std::abs(ia) < 1e-10);
        CHECK(std::abs(ib) < 1e-10);
    }

    TEST_CASE("quartic cup chord family continues to the strip width") {
        const Domain dom = bmo_domain(1.0);
        const LiftedCurve c = lift(dom, "power p=4 sign=-1");
        const auto changes = torsion_sign_changes(c, -2.0, 2.0);
        REQUIRE(changes.size() == 1);
        const auto family = solve_cup_chords(c, changes[0]);
        REQUIRE(family.size() >= 90);
        for (const Chord& ch : family) {
            CHECK(ch.in_domain);
            CHECK(std::abs(ch.a + ch.b) < 1e-6); // symmetric family
            CHECK(std::abs(ch.residual) < 1e-9);
            CHECK(ch.ineq_a <= 1e-12);
            CHECK(ch.ineq_b <= 1e-12);
        }
        // termination: the planar chord leaves the domain once |b| passes
        // the strip half-thickness parameter (chord midpoint enters the
        // inner region when b^2 > epsilon^2)
        const Chord& last = family.back();
        CHECK(std::abs(last.b) == doctest::Approx(1.0).epsilon(0.02));
        CHECK(last.ineq_a < 0.0);
        CHECK(last.ineq_b < 0.0);
    }

    TEST_CASE("non-cup origins yield empty families") {
        const Domain dom = bmo_domain(1.0);
        const LiftedCurve c = lift(dom, "sin");
        const auto changes = torsion_sign_changes(c, 0.0, 3.0);
        REQUIRE(changes.size() == 1); // up-crossing at pi/2
        CHECK(!changes[0].is_cup_candidate());
        CHECK(solve_cup_chords(c, changes[0]).empty());
    }

} // TEST_SUITE
