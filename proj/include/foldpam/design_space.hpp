#pragma once

#include <vector>

#include "foldpam/curve.hpp"
#include "foldpam/geometry.hpp"
#include "foldpam/models.hpp"

namespace foldpam {

// Model choice per family member.
enum class FamilyPolicy {
    pouch,          // ideal pouch model for every f_r
    pouch_folded,   // pouch expression with W = W0 - wf (non-analytic variant)
    ppam,           // sPAM/PPAM model for every f_r
    auto_by_fold,   // ppam at f_r >= 0.6 (near-maximal folding), pouch otherwise
};

struct FamilyOptions {
    int samples_per_curve = 201;
    SampleOptions sample;
};

// One curve per fold ratio, labeled "fr=<value>", ordered by f_r.
std::vector<ForceStrainCurve> curve_family(const Geometry& base, double pressure,
                                           const std::vector<double>& fr_values,
                                           FamilyPolicy policy,
                                           const FamilyOptions& opts = {});

// Area on the force-strain plane swept by the family: the union of the
// strips between consecutive curves (curves canonically ordered by label).
// Units: newtons, since strain is dimensionless.
double design_space_area(const std::vector<ForceStrainCurve>& curves);

// A_D' = A_D / (a_r * W0^2 * P).
double normalized_area(double area, const Geometry& geom, double pressure);

struct RegionArea {
    double area;        // newtons
    double normalized;  // A_D'
};

// Convenience wrapper: area plus its normalization at the family pressure.
RegionArea region_area(const std::vector<ForceStrainCurve>& curves, const Geometry& geom);

// (eps_max, F_max) of a single curve; see ForceStrainCurve::extrema.
ForceStrainCurve::Extrema curve_extrema(const ForceStrainCurve& curve);

}  // namespace foldpam
