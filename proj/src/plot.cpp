#include "foldpam/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "foldpam/errors.hpp"

namespace foldpam {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

struct Axis {
    double lo, hi;
    double map(double v, double px_lo, double px_hi) const {
        const double t = (v - lo) / (hi - lo);
        return px_lo + t * (px_hi - px_lo);
    }
};

Axis pad(double lo, double hi) {
    if (hi <= lo) hi = lo + 1.0;
    const double m = 0.05 * (hi - lo);
    return {lo - m, hi + m};
}

// One panel with a framed plot area, 5 ticks per axis and polyline series.
void draw_panel(std::ostringstream& svg, double x0, double y0, double w, double h,
                const Axis& ax, const Axis& ay,
                const std::string& xlabel, const std::string& ylabel,
                const std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>>& series,
                bool legend) {
    const double px0 = x0 + 62, px1 = x0 + w - 14;
    const double py0 = y0 + 14, py1 = y0 + h - 44;

    svg << "<rect x='" << px0 << "' y='" << py0 << "' width='" << px1 - px0
        << "' height='" << py1 - py0 << "' fill='none' stroke='black'/>\n";

    for (int i = 0; i <= 4; ++i) {
        const double tx = ax.lo + (ax.hi - ax.lo) * i / 4.0;
        const double px = ax.map(tx, px0, px1);
        svg << "<line x1='" << px << "' y1='" << py1 << "' x2='" << px << "' y2='" << py1 + 5
            << "' stroke='black'/>\n"
            << "<text x='" << px << "' y='" << py1 + 18
            << "' font-size='11' text-anchor='middle'>" << fmt(tx) << "</text>\n";
        const double ty = ay.lo + (ay.hi - ay.lo) * i / 4.0;
        const double py = ay.map(ty, py1, py0);
        svg << "<line x1='" << px0 - 5 << "' y1='" << py << "' x2='" << px0 << "' y2='" << py
            << "' stroke='black'/>\n"
            << "<text x='" << px0 - 8 << "' y='" << py + 4
            << "' font-size='11' text-anchor='end'>" << fmt(ty) << "</text>\n";
    }
    svg << "<text x='" << 0.5 * (px0 + px1) << "' y='" << py1 + 36
        << "' font-size='13' text-anchor='middle'>" << xlabel << "</text>\n";
    svg << "<text x='" << x0 + 14 << "' y='" << 0.5 * (py0 + py1)
        << "' font-size='13' text-anchor='middle' transform='rotate(-90 " << x0 + 14 << " "
        << 0.5 * (py0 + py1) << ")'>" << ylabel << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        svg << "<polyline fill='none' stroke='" << kPalette[si % 8] << "' stroke-width='1.5' points='";
        for (const auto& [x, y] : series[si].second)
            svg << ax.map(x, px0, px1) << "," << ay.map(y, py1, py0) << " ";
        svg << "'/>\n";
    }
    if (legend) {
        double ly = py0 + 14;
        for (std::size_t si = 0; si < series.size(); ++si) {
            const double lx = px1 - 110;
            svg << "<line x1='" << lx << "' y1='" << ly - 4 << "' x2='" << lx + 22 << "' y2='"
                << ly - 4 << "' stroke='" << kPalette[si % 8] << "' stroke-width='1.5'/>\n"
                << "<text x='" << lx + 28 << "' y='" << ly
                << "' font-size='11'>" << series[si].first << "</text>\n";
            ly += 16;
        }
    }
}

}  // namespace

std::string plot_curves_svg(const std::vector<ForceStrainCurve>& curves) {
    if (curves.empty()) throw domain_error("plot: no curves");
    for (const auto& c : curves)
        if (c.points.empty()) throw domain_error("plot: empty curve '" + c.label + "'");

    double xmin = 1e300, xmax = -1e300, ymin = 0.0, ymax = -1e300;
    std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>> series;
    for (const auto& c : curves) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : c.points) {
            pts.emplace_back(p.strain, p.force);
            xmin = std::min(xmin, p.strain);
            xmax = std::max(xmax, p.strain);
            ymax = std::max(ymax, p.force);
        }
        series.emplace_back(c.label.empty() ? "curve" : c.label, std::move(pts));
    }

    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='560' height='400' "
           "viewBox='0 0 560 400'>\n<rect width='560' height='400' fill='white'/>\n";
    draw_panel(svg, 0, 0, 560, 400, pad(xmin, xmax), pad(ymin, ymax),
               "strain", "force (N)", series, curves.size() > 1);
    svg << "</svg>\n";
    return svg.str();
}

std::string plot_trace_svg(const SimTrace& trace) {
    if (trace.rows.empty()) throw domain_error("plot: empty trace");

    std::vector<std::pair<double, double>> cmd, err;
    double t0 = trace.rows.front().time, t1 = trace.rows.back().time;
    double cmin = 1e300, cmax = -1e300, emin = 1e300, emax = -1e300;
    for (const auto& r : trace.rows) {
        cmd.emplace_back(r.time, r.command);
        err.emplace_back(r.time, r.error * 1e3);
        cmin = std::min(cmin, r.command);
        cmax = std::max(cmax, r.command);
        emin = std::min(emin, r.error * 1e3);
        emax = std::max(emax, r.error * 1e3);
    }

    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='560' height='560' "
           "viewBox='0 0 560 560'>\n<rect width='560' height='560' fill='white'/>\n";
    draw_panel(svg, 0, 0, 560, 280, pad(t0, t1), pad(cmin, cmax),
               "time (s)", "command", {{"command", cmd}}, false);
    draw_panel(svg, 0, 280, 560, 280, pad(t0, t1), pad(emin, emax),
               "time (s)", "error (mm)", {{"error", err}}, false);
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace foldpam
