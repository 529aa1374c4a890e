#include "foldpam/models.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "foldpam/errors.hpp"
#include "foldpam/numerics.hpp"

namespace foldpam {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void check_theta(double theta) {
    if (!(theta > 0.0) || theta > kHalfPi)
        throw domain_error("pouch model: theta must lie in (0, pi/2]");
}

void check_pressure(double pressure) {
    if (!(pressure > 0.0))
        throw domain_error("pressure must be positive");
}

// Left side of the eps-independent PPAM constraint, F(phi\m)/(sqrt(m) cos phi).
double ppam_first_kind_ratio(double m, double phi) {
    return ellip_f({phi, m}) / (std::sqrt(m) * std::cos(phi));
}

double ppam_second_kind_ratio(double m, double phi) {
    return ellip_e({phi, m}) / (std::sqrt(m) * std::cos(phi));
}

// phi in (0, pi/2) with F(phi\m)/(sqrt(m) cos phi) = ratio; the left side
// rises monotonically from 0 to infinity, so a bracket always exists.
double ppam_solve_phi(double m, double ratio) {
    const double lo = 1e-12;
    double hi = kHalfPi - 1e-6;
    while (ppam_first_kind_ratio(m, hi) < ratio) {
        hi = kHalfPi - 0.1 * (kHalfPi - hi);
        if (kHalfPi - hi < 1e-15)
            throw solve_error("ppam_solve: cannot bracket phi");
    }
    return find_root_bracketed(
        [&](double phi) { return ppam_first_kind_ratio(m, phi) - ratio; }, lo, hi, 1e-13);
}

}  // namespace

double pouch_strain(double theta) {
    check_theta(theta);
    return 1.0 - std::sin(theta) / theta;
}

double pouch_max_strain() { return 1.0 - 2.0 / std::numbers::pi; }

double pouch_effective_width(const Geometry& geom, PouchWidthPolicy policy) {
    const double w = policy == PouchWidthPolicy::ideal_circular
                         ? geom.w0() - wf_circ(geom.l0())
                         : geom.w0() - geom.wf();
    if (w <= 0.0)
        throw domain_error("pouch model: effective width W0 - wf_circ(l0) is not positive "
                           "(aspect ratio too large)");
    return w;
}

OperatingPoint pouch_point(const Geometry& geom, double pressure, double theta,
                           PouchWidthPolicy policy) {
    check_theta(theta);
    check_pressure(pressure);
    const double w_eff = pouch_effective_width(geom, policy);
    return {1.0 - std::sin(theta) / theta,
            w_eff * geom.l0() * pressure * std::cos(theta) / theta,
            pressure};
}

double pouch_force_at_strain(const Geometry& geom, double pressure, double eps,
                             const SampleOptions& opts) {
    check_pressure(pressure);
    const double eps_min = pouch_strain(opts.theta_min);
    const double eps_max = pouch_max_strain();
    if (eps < eps_min || eps > eps_max + 1e-15)
        throw domain_error("pouch model: strain " + std::to_string(eps) +
                           " outside [" + std::to_string(eps_min) + ", 1 - 2/pi]");
    const double theta = find_root_bracketed(
        [eps](double t) { return pouch_strain(t) - eps; }, opts.theta_min, kHalfPi, 1e-14);
    return pouch_point(geom, pressure, theta, opts.width_policy).force;
}

double pouch_volume(const Geometry& geom, double theta, PouchWidthPolicy policy) {
    check_theta(theta);
    const double w_eff = pouch_effective_width(geom, policy);
    const double l0 = geom.l0();
    return w_eff * l0 * l0 * (theta - std::sin(theta) * std::cos(theta)) / (2.0 * theta * theta);
}

PpamSolution ppam_solve(double l0_over_h, double eps) {
    if (!(l0_over_h > 1.0))
        throw domain_error("ppam model: requires l0/h > 1");
    if (!(eps > 0.0) || eps >= 1.0)
        throw domain_error("ppam model: strain must lie in (0, 1)");

    // Outer residual in m: with phi(m) pinned by the first-kind constraint,
    // E/(sqrt(m) cos phi) - (l0/h)(1 - eps/2). Positive as m -> 0, negative
    // below m = 0.5 whenever eps < eps_max.
    const double target = l0_over_h * (1.0 - 0.5 * eps);
    auto residual = [&](double m) {
        const double phi = ppam_solve_phi(m, l0_over_h);
        return ppam_second_kind_ratio(m, phi) - target;
    };
    const double m_lo = 1e-9, m_hi = 0.5;
    if (residual(m_hi) >= 0.0)
        throw solve_error("ppam_solve: no solution; strain " + std::to_string(eps) +
                          " at or beyond the zero-force strain " +
                          std::to_string(ppam_max_strain(l0_over_h)));
    const double m = find_root_bracketed(residual, m_lo, m_hi, 1e-13);
    return {m, ppam_solve_phi(m, l0_over_h)};
}

double ppam_max_strain(double l0_over_h) {
    if (!(l0_over_h > 1.0))
        throw domain_error("ppam model: requires l0/h > 1");
    const double phi = ppam_solve_phi(0.5, l0_over_h);
    return 2.0 * (1.0 - ellip_e({phi, 0.5}) / ellip_f({phi, 0.5}));
}

double ppam_force_at_strain(const Geometry& geom, double pressure, double eps) {
    check_pressure(pressure);
    const auto [m, phi] = ppam_solve(geom.l0() / geom.h(), eps);
    const double c = std::cos(phi);
    const double f = std::numbers::pi * pressure * geom.h() * geom.h() *
                     (1.0 - 2.0 * m) / (2.0 * m * c * c);
    return f < 0.0 ? 0.0 : f;
}

ForceStrainCurve sample_curve(ModelKind model, const Geometry& geom, double pressure,
                              int n, const SampleOptions& opts) {
    check_pressure(pressure);
    if (n < 2) throw domain_error("sample_curve: needs n >= 2");

    double eps_min, eps_max;
    if (model == ModelKind::pouch) {
        eps_min = pouch_strain(opts.theta_min);
        eps_max = pouch_max_strain();
    } else {
        eps_max = ppam_max_strain(geom.l0() / geom.h());
        eps_min = opts.ppam_eps_min_frac * eps_max;
    }

    ForceStrainCurve curve;
    curve.pressure = pressure;
    curve.points.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double eps = eps_min + (eps_max - eps_min) * i / (n - 1);
        double force;
        if (model == ModelKind::pouch) {
            force = pouch_force_at_strain(geom, pressure, eps, opts);
        } else {
            force = (i == n - 1) ? 0.0 : ppam_force_at_strain(geom, pressure, eps);
        }
        curve.points.push_back({eps, force});
    }
    return curve;
}

}  // namespace foldpam
