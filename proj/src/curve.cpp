#include "foldpam/curve.hpp"

#include <algorithm>
#include <cmath>

#include "foldpam/errors.hpp"

namespace foldpam {

void ForceStrainCurve::validate(double zero_force_tol) const {
    if (points.size() < 2)
        throw domain_error("curve '" + label + "': needs at least 2 points");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!std::isfinite(points[i].strain) || !std::isfinite(points[i].force))
            throw domain_error("curve '" + label + "': non-finite sample");
        if (points[i].force < 0.0)
            throw domain_error("curve '" + label + "': negative force");
        if (i > 0 && points[i].strain <= points[i - 1].strain)
            throw domain_error("curve '" + label + "': strains not strictly increasing");
    }
    if (points.back().force > zero_force_tol * max_force())
        throw domain_error("curve '" + label + "': does not terminate at zero force");
}

double ForceStrainCurve::max_force() const {
    double f = 0.0;
    for (const auto& p : points) f = std::max(f, p.force);
    return f;
}

double ForceStrainCurve::force_at_clamped(double eps) const {
    if (points.empty()) throw domain_error("curve '" + label + "': empty");
    if (eps <= points.front().strain) return points.front().force;
    if (eps >= points.back().strain) return 0.0;
    auto it = std::lower_bound(points.begin(), points.end(), eps,
                               [](const CurvePoint& p, double e) { return p.strain < e; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double t = (eps - lo.strain) / (hi.strain - lo.strain);
    return lo.force + t * (hi.force - lo.force);
}

ForceStrainCurve::Extrema ForceStrainCurve::extrema(double zero_force_tol) const {
    if (points.size() < 2)
        throw domain_error("curve '" + label + "': needs at least 2 points for extrema");
    const double fmax = max_force();
    const double tol = zero_force_tol * fmax;
    double eps_max = points.front().strain;
    for (const auto& p : points)
        if (p.force <= tol) eps_max = std::max(eps_max, p.strain);
    return {eps_max, fmax};
}

}  // namespace foldpam
