#pragma once

namespace foldpam {

// Physical parameterization of one actuator: flattened tube of width W0 and
// length l0, folded by wf in total (both sides), overall thickness h.
// All lengths in meters.
class Geometry {
public:
    Geometry(double w0, double l0, double wf, double h);

    double w0() const { return w0_; }
    double l0() const { return l0_; }
    double wf() const { return wf_; }
    double h() const { return h_; }

    double fold_ratio() const { return wf_ / w0_; }    // f_r = wf / W0, in [0, 2/3]
    double aspect_ratio() const { return l0_ / w0_; }  // a_r = l0 / W0

    // Geometry with the same dimensions but a different fold.
    Geometry with_fold_ratio(double fr) const;

private:
    double w0_, l0_, wf_, h_;
};

// Maximum physically attainable fold ratio (folds fully overlap).
constexpr double kMaxFoldRatio = 2.0 / 3.0;

// Slack on the folding limit: fabricated devices are specified to two
// decimals, so a nominal 0.67 at the limit must be accepted.
constexpr double kFoldRatioTol = 5e-3;

// Folded width at which the inflated cross-section becomes circular and the
// unit behaves as an ideal pouch motor: wf_circ = 2*l0/pi.
double wf_circ(double l0);

}  // namespace foldpam
