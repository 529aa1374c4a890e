#include "foldpam/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "foldpam/errors.hpp"

namespace foldpam {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void check_args(const EllipticArgs& a) {
    if (!std::isfinite(a.phi) || !std::isfinite(a.m))
        throw domain_error("elliptic: non-finite argument");
    if (a.phi < 0.0 || a.phi > kHalfPi + 1e-15)
        throw domain_error("elliptic: phi must lie in [0, pi/2]");
    if (a.m < 0.0 || a.m > 1.0)
        throw domain_error("elliptic: m must lie in [0, 1]");
}

}  // namespace

namespace detail {

// Carlson 1994 duplication algorithm.
double carlson_rf(double x, double y, double z) {
    constexpr double errtol = 1e-10;  // error scales as errtol^6
    double a = x, b = y, c = z;
    for (int it = 0; it < 200; ++it) {
        const double sa = std::sqrt(a), sb = std::sqrt(b), sc = std::sqrt(c);
        const double lam = sa * sb + sa * sc + sb * sc;
        a = 0.25 * (a + lam);
        b = 0.25 * (b + lam);
        c = 0.25 * (c + lam);
        const double mu = (a + b + c) / 3.0;
        const double eps = std::max({std::fabs(a - mu), std::fabs(b - mu), std::fabs(c - mu)}) / mu;
        if (eps < errtol) {
            const double dx = (mu - a) / mu, dy = (mu - b) / mu, dz = (mu - c) / mu;
            const double e2 = dx * dy + dy * dz + dz * dx;
            const double e3 = dx * dy * dz;
            return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / std::sqrt(mu);
        }
    }
    throw solve_error("carlson_rf: no convergence");
}

double carlson_rd(double x, double y, double z) {
    constexpr double errtol = 1e-10;
    double a = x, b = y, c = z;
    double sum = 0.0, fac = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double sa = std::sqrt(a), sb = std::sqrt(b), sc = std::sqrt(c);
        const double lam = sa * sb + sa * sc + sb * sc;
        sum += fac / (sc * (c + lam));
        fac *= 0.25;
        a = 0.25 * (a + lam);
        b = 0.25 * (b + lam);
        c = 0.25 * (c + lam);
        const double mu = 0.2 * (a + b + 3.0 * c);
        const double eps = std::max({std::fabs(a - mu), std::fabs(b - mu), std::fabs(c - mu)}) / mu;
        if (eps < errtol) {
            const double dx = (mu - a) / mu, dy = (mu - b) / mu, dz = (mu - c) / mu;
            const double ea = dx * dy;
            const double eb = dz * dz;
            const double ec = ea - eb;
            const double ed = ea - 6.0 * eb;
            const double ee = ed + ec + ec;
            const double s = ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed - 4.5 / 26.0 * dz * ee) +
                             dz * (ee / 6.0 + dz * (-9.0 / 22.0 * ec + 3.0 / 26.0 * dz * ea));
            return 3.0 * sum + fac * (1.0 + s) / (mu * std::sqrt(mu));
        }
    }
    throw solve_error("carlson_rd: no convergence");
}

}  // namespace detail

double ellip_f(const EllipticArgs& args) {
    check_args(args);
    const double s = std::sin(args.phi);
    const double c2 = 1.0 - s * s;
    const double q = 1.0 - args.m * s * s;
    if (q <= 0.0)
        throw solve_error("ellip_f: singular at phi = pi/2, m = 1");
    if (s == 0.0) return 0.0;
    return s * detail::carlson_rf(c2, q, 1.0);
}

double ellip_e(const EllipticArgs& args) {
    check_args(args);
    const double s = std::sin(args.phi);
    const double c2 = 1.0 - s * s;
    const double q = 1.0 - args.m * s * s;
    if (s == 0.0) return 0.0;
    if (q <= 0.0) return 1.0;  // E(pi/2 \ 1) = 1
    return s * (detail::carlson_rf(c2, q, 1.0) -
                (args.m / 3.0) * s * s * detail::carlson_rd(c2, q, 1.0));
}

double find_root_bracketed(const std::function<double(double)>& f,
                           double lo, double hi, double tol) {
    if (!(lo < hi)) throw domain_error("find_root_bracketed: requires lo < hi");
    if (!(tol > 0.0)) throw domain_error("find_root_bracketed: requires tol > 0");

    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw solve_error("find_root_bracketed: no sign change over [lo, hi]");

    // Brent: inverse quadratic interpolation with bisection fallback.
    double c = a, fc = fa;
    double d = b - a, e = d;
    constexpr int max_iter = 200;
    for (int it = 0; it < max_iter; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a; fc = fa;
            d = b - a; e = d;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::fabs(b) + 0.5 * tol;
        const double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0 || std::fabs(fb) <= tol) return b;
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::fabs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm; e = d;
            }
        } else {
            d = xm; e = d;
        }
        a = b; fa = fb;
        b += (std::fabs(d) > tol1) ? d : std::copysign(tol1, xm);
        fb = f(b);
    }
    throw solve_error("find_root_bracketed: iteration cap reached");
}

}  // namespace foldpam
