#include <doctest.h>

#include <cmath>
#include <numbers>

#include "foldpam/errors.hpp"
#include "foldpam/models.hpp"
#include "foldpam/numerics.hpp"
#include "oracles.hpp"

using namespace foldpam;

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
const Geometry kSquare(0.05, 0.05, 0.0, 0.002);  // W0 = l0 = 50mm
}

TEST_CASE("Geometry: derived ratios") {
    CHECK(kSquare.fold_ratio() == 0.0);
    CHECK(kSquare.aspect_ratio() == 1.0);

    // Reference device corner: f_r = 0.67 at W0 = 50mm, a_r = 0.4.
    const Geometry g(0.05, 0.02, 0.0335, 0.002);
    CHECK(g.fold_ratio() == doctest::Approx(0.67).epsilon(1e-12));
    CHECK(g.aspect_ratio() == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("Geometry: rejects over-folding and bad dimensions") {
    CHECK_THROWS_AS(Geometry(0.05, 0.05, 0.04, 0.002), domain_error);
    CHECK_THROWS_AS(Geometry(-0.05, 0.05, 0.0, 0.002), domain_error);
    CHECK_THROWS_AS(Geometry(0.05, 0.0, 0.0, 0.002), domain_error);
    CHECK_THROWS_AS(Geometry(0.05, 0.05, -0.01, 0.002), domain_error);
}

TEST_CASE("wf_circ") {
    CHECK(wf_circ(0.05) == doctest::Approx(0.031831).epsilon(1e-4));
    CHECK(wf_circ(std::numbers::pi / 2.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(wf_circ(0.0), domain_error);
}

TEST_CASE("pouch_point: endpoint and interior values") {
    const auto end = pouch_point(kSquare, 12400.0, kHalfPi);
    CHECK(end.strain == doctest::Approx(1.0 - 2.0 / std::numbers::pi).epsilon(1e-12));
    CHECK(end.force == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

    const auto mid = pouch_point(kSquare, 12400.0, std::numbers::pi / 4.0);
    CHECK(mid.strain == doctest::Approx(0.09968368384289394).epsilon(1e-12));
    CHECK(mid.force == doctest::Approx(10.141871585096847).epsilon(1e-12));

    CHECK_THROWS_AS(pouch_point(kSquare, 12400.0, 0.0), domain_error);
    CHECK_THROWS_AS(pouch_point(kSquare, 12400.0, 2.0), domain_error);
}

TEST_CASE("pouch model: strain increasing, force decreasing in theta") {
    double prev_eps = -1.0, prev_f = 1e300;
    for (int i = 1; i <= 40; ++i) {
        const double theta = kHalfPi * i / 40.0;
        const auto p = pouch_point(kSquare, 10000.0, theta);
        CHECK(p.strain > prev_eps);
        CHECK(p.force < prev_f);
        prev_eps = p.strain;
        prev_f = p.force;
    }
}

TEST_CASE("pouch_force_at_strain: round trip and range errors") {
    CHECK(pouch_force_at_strain(kSquare, 12400.0, pouch_max_strain()) ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
    CHECK(pouch_force_at_strain(kSquare, 12400.0, 0.09968368384289394) ==
          doctest::Approx(10.141871585096847).epsilon(1e-9));
    CHECK_THROWS_AS(pouch_force_at_strain(kSquare, 12400.0, 0.5), domain_error);
    CHECK_THROWS_AS(pouch_force_at_strain(kSquare, 12400.0, 1e-9), domain_error);
}

TEST_CASE("pouch model: homogeneous of degree 1 in pressure") {
    for (int i = 1; i <= 10; ++i) {
        const double eps = 0.01 + (pouch_max_strain() - 0.02) * i / 10.0;
        const double f1 = pouch_force_at_strain(kSquare, 5000.0, eps);
        const double f3 = pouch_force_at_strain(kSquare, 15000.0, eps);
        CHECK(f3 == doctest::Approx(3.0 * f1).epsilon(1e-12));
    }
}

TEST_CASE("pouch_volume: endpoints") {
    // V(pi/2) = W_eff * l0^2 / pi
    CHECK(pouch_volume(kSquare, kHalfPi) ==
          doctest::Approx(1.4458439862389396e-05).epsilon(1e-12));
    // flat pouch: V ~ W_eff * l0^2 * theta / 3 vanishes linearly
    CHECK(pouch_volume(kSquare, 1e-6) < 1e-10);
    CHECK_THROWS_AS(pouch_volume(kSquare, 0.0), domain_error);
    CHECK_THROWS_AS(pouch_volume(kSquare, 2.0), domain_error);
}

TEST_CASE("pouch model: force equals P dV/dl (central differences)") {
    const double P = 12400.0;
    const double l0 = kSquare.l0();
    const double dtheta = 1e-6;
    for (int i = 0; i <= 28; ++i) {
        const double theta = 0.1 + (1.5 - 0.1) * i / 28.0;
        const double dv = pouch_volume(kSquare, theta + dtheta) -
                          pouch_volume(kSquare, theta - dtheta);
        auto len = [l0](double t) { return l0 * std::sin(t) / t; };
        const double dl = len(theta + dtheta) - len(theta - dtheta);
        // Contraction does positive work: F = -P dV/dl with l shrinking.
        const double f_pv = -P * dv / dl;
        const double f_model = pouch_point(kSquare, P, theta).force;
        CHECK(f_pv == doctest::Approx(f_model).epsilon(1e-4));
    }
}

TEST_CASE("pouch width policy: folded width variant") {
    const Geometry g(0.05, 0.05, 0.02, 0.002);
    const auto ideal = pouch_point(g, 10000.0, 1.0);
    const auto folded = pouch_point(g, 10000.0, 1.0, PouchWidthPolicy::folded_width);
    CHECK(folded.strain == ideal.strain);
    CHECK(folded.force == doctest::Approx(ideal.force * (0.05 - 0.02) /
                                          (0.05 - wf_circ(0.05))).epsilon(1e-12));
}

TEST_CASE("ppam_solve: residuals and branch bounds") {
    for (double r : {5.0, 10.0, 20.0}) {
        const double eps_max = ppam_max_strain(r);
        for (int i = 1; i <= 6; ++i) {
            const double eps = eps_max * i / 7.0;
            const auto [m, phi] = ppam_solve(r, eps);
            CHECK(m > 0.0);
            CHECK(m < 0.5);
            CHECK(phi > 0.0);
            CHECK(phi < kHalfPi);
            const double d = std::sqrt(m) * std::cos(phi);
            CHECK(std::fabs(ellip_f({phi, m}) / d - r) <= 1e-8);
            CHECK(std::fabs(ellip_e({phi, m}) / d - r * (1.0 - 0.5 * eps)) <= 1e-8);
        }
    }
}

TEST_CASE("ppam_solve: agreement with the 2-D grid-search oracle") {
    auto ef = [](double phi, double m) { return ellip_f({phi, m}); };
    auto ee = [](double phi, double m) { return ellip_e({phi, m}); };
    const auto ref = oracle::ppam_grid_search(10.0, 0.2, ef, ee, 1e-3, 2e-3);
    REQUIRE(ref.found);
    const auto sol = ppam_solve(10.0, 0.2);
    CHECK(sol.m == doctest::Approx(ref.m).epsilon(1e-8));
    CHECK(sol.phi == doctest::Approx(ref.phi).epsilon(1e-8));
}

TEST_CASE("ppam_solve: no solution beyond the zero-force strain") {
    CHECK_THROWS_AS(ppam_solve(10.0, 0.99), solve_error);
    CHECK_THROWS_AS(ppam_solve(0.5, 0.1), domain_error);
    CHECK_THROWS_AS(ppam_solve(10.0, 0.0), domain_error);
}

TEST_CASE("ppam force: nonincreasing in strain, vanishes at eps_max") {
    const Geometry g(0.05, 0.05, 0.0335, 0.005);  // l0/h = 10
    const double eps_max = ppam_max_strain(10.0);
    const double f_ref = ppam_force_at_strain(g, 12400.0, 0.01);
    double prev = 1e300;
    for (int i = 1; i <= 15; ++i) {
        const double eps = eps_max * i / 16.0;
        const double f = ppam_force_at_strain(g, 12400.0, eps);
        CHECK(f <= prev + 1e-12);
        CHECK(f >= 0.0);
        prev = f;
    }
    CHECK(ppam_force_at_strain(g, 12400.0, eps_max * 0.999999) <= 1e-4 * f_ref);
}

TEST_CASE("ppam force: homogeneous in pressure") {
    const Geometry g(0.05, 0.05, 0.0335, 0.005);
    const double f1 = ppam_force_at_strain(g, 6000.0, 0.1);
    const double f2 = ppam_force_at_strain(g, 12000.0, 0.1);
    CHECK(f2 == doctest::Approx(2.0 * f1).epsilon(1e-10));
}

TEST_CASE("sample_curve: pouch endpoint contract") {
    auto two = sample_curve(ModelKind::pouch, kSquare, 12400.0, 2);
    CHECK(two.points.size() == 2);
    CHECK(two.points.back().strain == doctest::Approx(pouch_max_strain()).epsilon(1e-12));
    CHECK(two.points.back().force == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));

    auto c = sample_curve(ModelKind::pouch, kSquare, 12400.0, 101);
    c.validate();
    CHECK(c.points.size() == 101);
    CHECK(c.max_strain() == doctest::Approx(0.36338).epsilon(1e-5));
    CHECK_THROWS_AS(sample_curve(ModelKind::pouch, kSquare, 12400.0, 1), domain_error);
}

TEST_CASE("sample_curve: ppam monotone decreasing and round-trip") {
    const Geometry g(0.05, 0.05, 0.0335, 0.005);
    auto c = sample_curve(ModelKind::ppam, g, 12400.0, 101);
    c.validate();
    for (std::size_t i = 1; i < c.points.size(); ++i)
        CHECK(c.points[i].force <= c.points[i - 1].force + 1e-12);
    // Re-solving at stored strains reproduces stored forces.
    for (std::size_t i = 0; i + 1 < c.points.size(); i += 10) {
        const double f = ppam_force_at_strain(g, 12400.0, c.points[i].strain);
        CHECK(f == doctest::Approx(c.points[i].force).epsilon(1e-9));
    }
}

TEST_CASE("sample_curve: pouch round-trip at sampled strains") {
    auto c = sample_curve(ModelKind::pouch, kSquare, 12400.0, 51);
    for (const auto& p : c.points) {
        const double f = pouch_force_at_strain(kSquare, 12400.0, p.strain);
        CHECK(f == doctest::Approx(p.force).epsilon(1e-9).scale(1.0));
    }
}
