#include "foldpam/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "foldpam/errors.hpp"

namespace foldpam {

Geometry::Geometry(double w0, double l0, double wf, double h)
    : w0_(w0), l0_(l0), wf_(wf), h_(h) {
    if (!(std::isfinite(w0) && std::isfinite(l0) && std::isfinite(wf) && std::isfinite(h)))
        throw domain_error("Geometry: non-finite dimension");
    if (w0 <= 0.0 || l0 <= 0.0 || h <= 0.0)
        throw domain_error("Geometry: W0, l0 and h must be positive");
    if (wf < 0.0)
        throw domain_error("Geometry: wf must be nonnegative");
    if (wf > (kMaxFoldRatio + kFoldRatioTol) * w0)
        throw domain_error("Geometry: wf = " + std::to_string(wf) +
                           " exceeds the folding limit (2/3)*W0 = " +
                           std::to_string(kMaxFoldRatio * w0));
}

Geometry Geometry::with_fold_ratio(double fr) const {
    return Geometry(w0_, l0_, fr * w0_, h_);
}

double wf_circ(double l0) {
    if (!(l0 > 0.0)) throw domain_error("wf_circ: l0 must be positive");
    return 2.0 * l0 / std::numbers::pi;
}

}  // namespace foldpam
