#include "foldpam/design_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <string>

#include "foldpam/errors.hpp"

namespace foldpam {

namespace {

std::string fr_label(double fr) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "fr=%.4g", fr);
    return buf;
}

// Numeric-aware label compare so "fr=0.2" sorts before "fr=0.52".
bool label_less(const ForceStrainCurve& a, const ForceStrainCurve& b) {
    auto first_number = [](const std::string& s, double& out) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (std::isdigit(static_cast<unsigned char>(s[i])) ||
                (s[i] == '-' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
                out = std::strtod(s.c_str() + i, nullptr);
                return true;
            }
        }
        return false;
    };
    double na, nb;
    if (first_number(a.label, na) && first_number(b.label, nb) && na != nb) return na < nb;
    return a.label < b.label;
}

}  // namespace

std::vector<ForceStrainCurve> curve_family(const Geometry& base, double pressure,
                                           const std::vector<double>& fr_values,
                                           FamilyPolicy policy, const FamilyOptions& opts) {
    if (fr_values.empty()) throw domain_error("curve_family: empty fold-ratio list");
    std::vector<double> frs = fr_values;
    std::sort(frs.begin(), frs.end());

    std::vector<ForceStrainCurve> family;
    family.reserve(frs.size());
    for (double fr : frs) {
        if (fr < 0.0 || fr > kMaxFoldRatio + kFoldRatioTol)
            throw domain_error("curve_family: fold ratio " + std::to_string(fr) +
                               " outside [0, 2/3]");
        try {
            const Geometry geom = base.with_fold_ratio(std::min(fr, kMaxFoldRatio));
            ModelKind kind = ModelKind::pouch;
            SampleOptions sample = opts.sample;
            switch (policy) {
                case FamilyPolicy::pouch:
                    break;
                case FamilyPolicy::pouch_folded:
                    sample.width_policy = PouchWidthPolicy::folded_width;
                    break;
                case FamilyPolicy::ppam:
                    kind = ModelKind::ppam;
                    break;
                case FamilyPolicy::auto_by_fold:
                    kind = fr >= 0.6 ? ModelKind::ppam : ModelKind::pouch;
                    break;
            }
            auto curve = sample_curve(kind, geom, pressure, opts.samples_per_curve, sample);
            curve.label = fr_label(fr);
            family.push_back(std::move(curve));
        } catch (const std::exception& e) {
            throw solve_error("curve_family: member f_r = " + std::to_string(fr) +
                              " failed: " + e.what());
        }
    }
    return family;
}

double design_space_area(const std::vector<ForceStrainCurve>& curves) {
    if (curves.size() < 2)
        throw domain_error("design_space_area: needs at least 2 curves");
    const double p0 = curves.front().pressure;
    for (const auto& c : curves) {
        if (c.points.size() < 2)
            throw domain_error("design_space_area: curve '" + c.label + "' too short");
        if (std::fabs(c.pressure - p0) > 1e-9 * std::fabs(p0))
            throw domain_error("design_space_area: mixed pressures in the family");
    }

    std::vector<const ForceStrainCurve*> sorted;
    for (const auto& c : curves) sorted.push_back(&c);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const ForceStrainCurve* a, const ForceStrainCurve* b) {
                         return label_less(*a, *b);
                     });

    double eps_lo = 1e300, eps_hi = -1e300;
    for (const auto* c : sorted) {
        eps_lo = std::min(eps_lo, c->min_strain());
        eps_hi = std::max(eps_hi, c->max_strain());
    }
    if (!(eps_hi > eps_lo)) return 0.0;

    // Strain node set: a 512-point base grid, every curve's own nodes, and
    // all pairwise crossing points, so each curve value is linear per cell
    // and the curve ordering is fixed per cell.
    std::set<double> nodes;
    for (int i = 0; i < 512; ++i)
        nodes.insert(eps_lo + (eps_hi - eps_lo) * i / 511.0);
    for (const auto* c : sorted)
        for (const auto& p : c->points)
            if (p.strain >= eps_lo && p.strain <= eps_hi) nodes.insert(p.strain);

    std::vector<double> grid(nodes.begin(), nodes.end());
    const std::size_t nc = sorted.size();

    auto value = [&](std::size_t ci, double eps) { return sorted[ci]->force_at_clamped(eps); };

    for (std::size_t a = 0; a < nc; ++a) {
        for (std::size_t b = a + 1; b < nc; ++b) {
            for (std::size_t g = 0; g + 1 < grid.size(); ++g) {
                const double x0 = grid[g], x1 = grid[g + 1];
                const double d0 = value(a, x0) - value(b, x0);
                const double d1 = value(a, x1) - value(b, x1);
                if ((d0 > 0.0) != (d1 > 0.0) && d0 != d1) {
                    const double t = d0 / (d0 - d1);
                    nodes.insert(x0 + t * (x1 - x0));
                }
            }
        }
    }
    grid.assign(nodes.begin(), nodes.end());

    // Interval-union length of the consecutive-pair strips at one strain.
    auto union_length = [&](double eps) {
        std::vector<std::pair<double, double>> iv;
        iv.reserve(nc - 1);
        for (std::size_t i = 0; i + 1 < nc; ++i) {
            const double fa = value(i, eps), fb = value(i + 1, eps);
            iv.emplace_back(std::min(fa, fb), std::max(fa, fb));
        }
        std::sort(iv.begin(), iv.end());
        double total = 0.0, lo = 0.0, hi = -1.0;
        for (const auto& [a, b] : iv) {
            if (a > hi) {
                if (hi > lo) total += hi - lo;
                lo = a;
                hi = b;
            } else {
                hi = std::max(hi, b);
            }
        }
        if (hi > lo) total += hi - lo;
        return total;
    };

    double area = 0.0;
    double prev_len = union_length(grid.front());
    for (std::size_t g = 0; g + 1 < grid.size(); ++g) {
        const double len = union_length(grid[g + 1]);
        area += 0.5 * (prev_len + len) * (grid[g + 1] - grid[g]);
        prev_len = len;
    }
    return area;
}

double normalized_area(double area, const Geometry& geom, double pressure) {
    if (area < 0.0) throw domain_error("normalized_area: negative area");
    if (!(pressure > 0.0)) throw domain_error("normalized_area: pressure must be positive");
    return area / (geom.aspect_ratio() * geom.w0() * geom.w0() * pressure);
}

RegionArea region_area(const std::vector<ForceStrainCurve>& curves, const Geometry& geom) {
    const double area = design_space_area(curves);
    return {area, normalized_area(area, geom, curves.front().pressure)};
}

ForceStrainCurve::Extrema curve_extrema(const ForceStrainCurve& curve) {
    return curve.extrema();
}

}  // namespace foldpam
