#include <doctest.h>

#include <cmath>

#include "bellman2d/conditions.hpp"
#include "bellman2d/presets.hpp"

using namespace bellman2d;

TEST_SUITE("conditions") {

    TEST_CASE("divergence classifier flags constant tangent lengths") {
        // ell == 1: every dyadic window contributes its own length
        const auto rep = classify_divergence([](double) { return 1.0; }, 1.0, 6);
        CHECK(rep.verdict == Divergence::Diverges);
        REQUIRE(rep.window_integrals.size() == 6);
        CHECK(rep.window_integrals[0] == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(rep.window_integrals[5] == doctest::Approx(32.0).epsilon(1e-10));
        CHECK(rep.total == doctest::Approx(63.0).epsilon(1e-10));
    }

    TEST_CASE("divergence classifier flags logarithmic growth") {
        // ell = 1 + sigma: every dyadic window contributes exactly ln 2
        const auto rep = classify_divergence([](double s) { return 1.0 + s; }, 1.0, 6);
        CHECK(rep.verdict == Divergence::Diverges);
        for (double w : rep.window_integrals)
            CHECK(w == doctest::Approx(std::log(2.0)).epsilon(1e-8));
        CHECK(rep.total == doctest::Approx(std::log(64.0)).epsilon(1e-8));
    }

    TEST_CASE("divergence classifier leaves integrable tails inconclusive") {
        // ell = (1 + sigma)^2: window increments halve, total stays below 1
        const auto rep = classify_divergence(
            [](double s) { return (1.0 + s) * (1.0 + s); }, 1.0, 6);
        CHECK(rep.verdict == Divergence::Inconclusive);
        REQUIRE(rep.window_integrals.size() == 6);
        CHECK(rep.window_integrals[1] == doctest::Approx(0.25).epsilon(1e-8));
        CHECK(rep.window_integrals[2] / rep.window_integrals[1] ==
              doctest::Approx(0.5).epsilon(1e-6));
        CHECK(rep.total == doctest::Approx(63.0 / 64.0).epsilon(1e-8));
    }

    TEST_CASE("divergence classifier needs at least three windows") {
        const auto rep = classify_divergence([](double) { return 1.0; }, 1.0, 2);
        CHECK(rep.verdict == Divergence::Inconclusive);
        CHECK(rep.window_integrals.size() == 2);
    }

    TEST_CASE("parabolic strip tangent lengths diverge on both sides") {
        // ell(s) = eps sqrt(1 + 4 s^2) while arclength advances by
        // sqrt(1 + 4 s^2) ds, so the integral of 1/ell equals
        // (parameter reach)/eps; reach for arclength 48 is about sqrt(48).
        const Domain dom = bmo_domain(0.5);
        for (TangentSide side : {TangentSide::Right, TangentSide::Left}) {
            const auto rep = check_divergence_condition(dom, side, 0.0, 48.0, 8);
            CHECK(rep.verdict == Divergence::Diverges);
            CHECK(rep.total == doctest::Approx(2.0 * std::sqrt(48.0)).epsilon(0.15));
        }
    }

    TEST_CASE("unbounded check passes strips and fails disks") {
        CHECK(check_unbounded(bmo_domain(0.5), -3.0, 3.0).verdict == Verdict::Pass);
        CHECK(check_unbounded(ap_domain(1.0, -1.0, 2.0), -3.0, 3.0).verdict == Verdict::Pass);

        const auto disks = check_unbounded(disks_domain(2.0, 1.0), -3.0, 3.0);
        CHECK(disks.verdict == Verdict::Fail);
        REQUIRE(disks.rows.size() == 2);
        CHECK(disks.rows[0].value == doctest::Approx(2.0).epsilon(1e-9)); // constant radius
        CHECK(disks.rows[1].value == doctest::Approx(1.0).epsilon(1e-9));
    }

    TEST_CASE("ray condition holds for the built-in annuli") {
        CHECK(check_ray_condition(bmo_domain(1.0)).verdict == Verdict::Pass);
        CHECK(check_ray_condition(ap_domain(1.0, -1.0, 2.0)).verdict == Verdict::Pass);
    }

    TEST_CASE("ray condition fails when only the inner region is bounded") {
        // parabola-strip outer boundary with a synthetic disk inner region:
        // upward rays live in the outer region but no long ray fits the disk
        Domain dom = bmo_domain(1.0);
        const Vec2 c(0.0, 2.0);
        const double r = 0.5;
        dom.name = "synthetic_bounded_inner";
        dom.vertically_convex = false;
        dom.inner.param_lo = -M_PI;
        dom.inner.param_hi = M_PI;
        dom.inner.eval = [=](double t) {
            return Vec2(c.x() + r * std::cos(t), c.y() + r * std::sin(t));
        };
        dom.inner.d1 = [=](double t) { return Vec2(-r * std::sin(t), r * std::cos(t)); };
        dom.inner.d2 = [=](double t) { return Vec2(-r * std::cos(t), -r * std::sin(t)); };
        dom.inner.d3 = [=](double t) { return Vec2(r * std::sin(t), -r * std::cos(t)); };
        dom.inner_region.level = [=](const Vec2& p) {
            return r * r - (p - c).squaredNorm();
        };

        const auto rep = check_ray_condition(dom);
        CHECK(rep.verdict == Verdict::Fail);
    }

    TEST_CASE("ray condition is vacuous for bounded domains") {
        CHECK(check_ray_condition(disks_domain(2.0, 1.0)).verdict == Verdict::Inconclusive);
    }

    TEST_CASE("verdict names") {
        CHECK(to_string(Verdict::Pass) == "pass");
        CHECK(to_string(Verdict::Fail) == "fail");
        CHECK(to_string(Verdict::Inconclusive) == "inconclusive");
    }

} // TEST_SUITE
