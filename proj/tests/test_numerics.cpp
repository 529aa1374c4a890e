#include <doctest.h>

#include <cmath>
#include <numbers>

#include "foldpam/errors.hpp"
#include "foldpam/numerics.hpp"
#include "oracles.hpp"

using foldpam::EllipticArgs;
using foldpam::ellip_e;
using foldpam::ellip_f;
using foldpam::find_root_bracketed;

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
}

TEST_CASE("ellip_f: m = 0 reduces to the identity") {
    CHECK(ellip_f({0.5, 0.0}) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(ellip_f({0.0, 0.3}) == 0.0);
}

TEST_CASE("ellip_e: m = 0 and the m = 1 endpoint") {
    CHECK(ellip_e({0.7, 0.0}) == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(ellip_e({kHalfPi, 1.0}) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("ellip_f: singular combination rejected") {
    CHECK_THROWS_AS(ellip_f({kHalfPi, 1.0}), foldpam::solve_error);
}

TEST_CASE("elliptic integrals: invalid arguments") {
    CHECK_THROWS_AS(ellip_f({-0.1, 0.5}), foldpam::domain_error);
    CHECK_THROWS_AS(ellip_f({2.0, 0.5}), foldpam::domain_error);
    CHECK_THROWS_AS(ellip_f({0.5, -0.1}), foldpam::domain_error);
    CHECK_THROWS_AS(ellip_e({0.5, 1.5}), foldpam::domain_error);
}

TEST_CASE("elliptic integrals: quarter-period values against the quadrature oracle") {
    const double f_oracle = oracle::ellip_f_quadrature(kHalfPi, 0.5);
    const double e_oracle = oracle::ellip_e_quadrature(kHalfPi, 0.5);
    CHECK(f_oracle == doctest::Approx(1.8541).epsilon(1e-4));
    CHECK(e_oracle == doctest::Approx(1.3506).epsilon(1e-4));
    CHECK(ellip_f({kHalfPi, 0.5}) == doctest::Approx(f_oracle).epsilon(1e-13));
    CHECK(ellip_e({kHalfPi, 0.5}) == doctest::Approx(e_oracle).epsilon(1e-13));
}

TEST_CASE("elliptic integrals: 20x20 grid against the quadrature oracle") {
    for (int i = 0; i < 20; ++i) {
        for (int j = 0; j < 20; ++j) {
            const double phi = kHalfPi * (i + 1) / 20.0;
            const double m = 0.99 * j / 19.0;
            const double f = ellip_f({phi, m});
            const double e = ellip_e({phi, m});
            CHECK(std::fabs(f - oracle::ellip_f_quadrature(phi, m)) <= 1e-12 * f);
            CHECK(std::fabs(e - oracle::ellip_e_quadrature(phi, m)) <= 1e-12 * e);
        }
    }
}

TEST_CASE("elliptic integrals: monotone in phi and E <= phi <= F") {
    for (int j = 0; j < 8; ++j) {
        const double m = 0.95 * j / 7.0;
        double prev_f = 0.0, prev_e = 0.0;
        for (int i = 1; i <= 16; ++i) {
            const double phi = kHalfPi * i / 16.0;
            const double f = ellip_f({phi, m});
            const double e = ellip_e({phi, m});
            CHECK(f > prev_f);
            CHECK(e > prev_e);
            CHECK(e <= phi + 1e-14);
            CHECK(phi <= f + 1e-14);
            prev_f = f;
            prev_e = e;
        }
    }
}

TEST_CASE("find_root_bracketed: simple roots") {
    CHECK(find_root_bracketed([](double x) { return x - 1.0; }, 0.0, 2.0, 1e-12) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(find_root_bracketed([](double x) { return std::cos(x); }, 1.0, 2.0, 1e-12) ==
          doctest::Approx(kHalfPi).epsilon(1e-12));
}

TEST_CASE("find_root_bracketed: cube root against the bisection oracle") {
    auto f = [](double x) { return x * x * x - 2.0; };
    const double root = find_root_bracketed(f, 1.0, 2.0, 1e-12);
    const double ref = oracle::bisect(f, 1.0, 2.0, 1e-14);
    CHECK(root == doctest::Approx(ref).epsilon(1e-12));
    CHECK(root == doctest::Approx(std::cbrt(2.0)).epsilon(1e-12));
}

TEST_CASE("find_root_bracketed: error paths") {
    CHECK_THROWS_AS(find_root_bracketed([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12),
                    foldpam::solve_error);
    CHECK_THROWS_AS(find_root_bracketed([](double x) { return x; }, 1.0, 0.0, 1e-12),
                    foldpam::domain_error);
    CHECK_THROWS_AS(find_root_bracketed([](double x) { return x; }, -1.0, 1.0, 0.0),
                    foldpam::domain_error);
}

TEST_CASE("find_root_bracketed: result stays inside the bracket") {
    for (int k = 1; k <= 10; ++k) {
        const double a = -1.0, b = 0.3 * k;
        auto f = [k](double x) { return std::tanh(3.0 * x) - 0.1 * k + 0.05; };
        const double fa = f(a), fb = f(b);
        if ((fa > 0.0) == (fb > 0.0)) continue;
        const double x = find_root_bracketed(f, a, b, 1e-12);
        CHECK(x >= a);
        CHECK(x <= b);
    }
}
