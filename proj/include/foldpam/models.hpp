#pragma once

#include "foldpam/curve.hpp"
#include "foldpam/geometry.hpp"

namespace foldpam {

// One (strain, force, pressure) triple on an actuator characteristic.
struct OperatingPoint {
    double strain;    // dimensionless, in [0, 1)
    double force;     // newtons
    double pressure;  // pascals
};

// Width entering the pouch-motor force expression. The analytic model is
// only exact for the ideal pouch state W = W0 - wf_circ(l0); the folded
// variant substitutes the actual folded width for exploratory use and has
// no analytic backing.
enum class PouchWidthPolicy { ideal_circular, folded_width };

enum class ModelKind { pouch, ppam };

struct SampleOptions {
    double theta_min = 1e-3;           // pouch: smallest arc angle (clips the
                                       // divergent zero-strain force)
    double ppam_eps_min_frac = 1e-2;   // ppam: eps_min as fraction of eps_max
    PouchWidthPolicy width_policy = PouchWidthPolicy::ideal_circular;
};

// --- Ideal pouch motor (two circular arcs), parameterized by theta in (0, pi/2].

// Strain eps(theta) = 1 - sin(theta)/theta; strictly increasing.
double pouch_strain(double theta);

// Maximum strain of the pouch model, 1 - 2/pi.
double pouch_max_strain();

double pouch_effective_width(const Geometry& geom,
                             PouchWidthPolicy policy = PouchWidthPolicy::ideal_circular);

// F(theta) = W_eff * l0 * P * cos(theta)/theta together with eps(theta).
OperatingPoint pouch_point(const Geometry& geom, double pressure, double theta,
                           PouchWidthPolicy policy = PouchWidthPolicy::ideal_circular);

// Inverts eps(theta) = eps on (theta_min, pi/2], then evaluates the force.
double pouch_force_at_strain(const Geometry& geom, double pressure, double eps,
                             const SampleOptions& opts = {});

// Enclosed air volume of the ideal pouch, lens cross-section times width:
// V(theta) = W_eff * l0^2 * (theta - sin(theta)cos(theta)) / (2 theta^2).
double pouch_volume(const Geometry& geom, double theta,
                    PouchWidthPolicy policy = PouchWidthPolicy::ideal_circular);

// --- sPAM/PPAM model for the maximally folded state.

struct PpamSolution {
    double m;    // in (0, 0.5)
    double phi;  // in (0, pi/2)
};

// Solves the coupled constraints
//   E(phi\m)/(sqrt(m) cos phi) = (l0/h)(1 - eps/2)
//   F(phi\m)/(sqrt(m) cos phi) = l0/h
// by nested bracketed 1-D root finding (phi from the second constraint for
// each trial m, then m from the first).
PpamSolution ppam_solve(double l0_over_h, double eps);

// Strain at which the PPAM force reaches zero (m -> 0.5).
double ppam_max_strain(double l0_over_h);

// F = pi * P * h^2 * (1 - 2m) / (2 m cos^2 phi) at the solved (m, phi).
double ppam_force_at_strain(const Geometry& geom, double pressure, double eps);

// --- Sampling.

// n-point curve with strictly increasing strain from the model's clipped
// minimum to its zero-force maximum.
ForceStrainCurve sample_curve(ModelKind model, const Geometry& geom, double pressure,
                              int n, const SampleOptions& opts = {});

}  // namespace foldpam
