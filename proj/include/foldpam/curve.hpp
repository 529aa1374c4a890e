#pragma once

#include <string>
#include <vector>

namespace foldpam {

struct CurvePoint {
    double strain;  // dimensionless, 1 - l/l0
    double force;   // newtons
};

// Sampled force-strain characteristic at fixed geometry and pressure,
// ordered by strictly increasing strain.
struct ForceStrainCurve {
    std::vector<CurvePoint> points;
    double pressure = 0.0;  // pascals
    std::string label;

    // Throws domain_error when strains are not strictly increasing, any
    // force is negative, or the curve does not terminate near zero force
    // (last force <= zero_force_tol * max force).
    void validate(double zero_force_tol = 0.01) const;

    double max_force() const;
    double min_strain() const { return points.front().strain; }
    double max_strain() const { return points.back().strain; }

    // Linear interpolation; clamps to the first force below the sampled
    // range and to zero beyond the zero-force end.
    double force_at_clamped(double eps) const;

    // Largest strain with force at or below zero_force_tol * max force,
    // and the largest sampled force.
    struct Extrema {
        double eps_max;
        double f_max;
    };
    Extrema extrema(double zero_force_tol = 0.01) const;
};

}  // namespace foldpam
