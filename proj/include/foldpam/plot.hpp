#pragma once

#include <string>
#include <vector>

#include "foldpam/control.hpp"
#include "foldpam/curve.hpp"

namespace foldpam {

// Self-contained SVG line plot of one or more force-strain curves, axes in
// bench units (strain, N), with a legend when there are multiple curves.
std::string plot_curves_svg(const std::vector<ForceStrainCurve>& curves);

// Two stacked panels over time: command on top, position error (mm) below.
std::string plot_trace_svg(const SimTrace& trace);

}  // namespace foldpam
