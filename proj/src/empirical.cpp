#include "foldpam/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>

#include <json.hpp>

#include "foldpam/errors.hpp"

namespace foldpam {

namespace {

double require_key(const nlohmann::json& j, const char* key) {
    if (!j.contains(key))
        throw parse_error(std::string("metadata: missing key '") + key + "'");
    if (!j[key].is_number())
        throw parse_error(std::string("metadata: key '") + key + "' is not numeric");
    return j[key].get<double>();
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double sse = 0.0;
};

LineFit fit_line(const std::vector<CurvePoint>& pts, std::size_t lo, std::size_t hi) {
    const double n = static_cast<double>(hi - lo + 1);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = lo; i <= hi; ++i) {
        sx += pts[i].strain;
        sy += pts[i].force;
        sxx += pts[i].strain * pts[i].strain;
        sxy += pts[i].strain * pts[i].force;
    }
    const double den = n * sxx - sx * sx;
    LineFit fit;
    fit.slope = den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
    fit.intercept = (sy - fit.slope * sx) / n;
    for (std::size_t i = lo; i <= hi; ++i) {
        const double r = pts[i].force - (fit.slope * pts[i].strain + fit.intercept);
        fit.sse += r * r;
    }
    return fit;
}

}  // namespace

DatasetMeta meta_from_json(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("metadata: invalid JSON: ") + e.what());
    }
    DatasetMeta meta;
    meta.pressure = require_key(j, "pressure_kpa") * 1e3;
    meta.l0 = require_key(j, "l0_mm") * 1e-3;
    meta.w0 = require_key(j, "w0_mm") * 1e-3;
    meta.fold_ratio = require_key(j, "fold_ratio");
    meta.travel_rate = require_key(j, "travel_rate_mm_per_min") * 1e-3 / 60.0;
    meta.sample_rate = require_key(j, "sample_rate_hz");
    if (meta.l0 <= 0.0 || meta.travel_rate <= 0.0 || meta.sample_rate <= 0.0)
        throw parse_error("metadata: l0, travel rate and sample rate must be positive");
    return meta;
}

MeasurementDataset load_measurements(std::istream& source, const DatasetMeta& meta) {
    if (!(meta.sample_rate > 0.0) || !(meta.travel_rate > 0.0) || !(meta.l0 > 0.0))
        throw domain_error("load_measurements: incomplete metadata");

    std::string line;
    if (!std::getline(source, line)) throw parse_error("empty measurement file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "time_s,force_n")
        throw parse_error("expected header 'time_s,force_n', got '" + line + "'", 1);

    MeasurementDataset ds;
    ds.meta = meta;
    long lineno = 1;
    double prev_time = -1e300;
    while (std::getline(source, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw parse_error("expected 'time_s,force_n' pair", lineno);
        double t, f;
        try {
            t = std::stod(line.substr(0, comma));
            f = std::stod(line.substr(comma + 1));
        } catch (const std::exception&) {
            throw parse_error("malformed number in '" + line + "'", lineno);
        }
        if (t <= prev_time)
            throw parse_error("time not strictly increasing", lineno);
        if (f < -0.05)
            throw parse_error("force below the -0.05 N noise floor", lineno);
        prev_time = t;
        ds.samples.push_back({t, f});
    }
    if (ds.samples.size() < 2) throw parse_error("measurement file needs at least 2 rows");
    return ds;
}

ForceStrainCurve dataset_to_curve(const MeasurementDataset& ds, Stroke stroke) {
    const auto& s = ds.samples;
    if (s.size() < 3)
        throw domain_error("dataset_to_curve: needs at least 3 samples");

    // Turnaround at the force minimum; a minimum at either end means the
    // record never reversed.
    std::size_t turn = 0;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i].force < s[turn].force) turn = i;
    if (turn == 0 || turn + 1 == s.size())
        throw solve_error("dataset_to_curve: force is monotone over the record; "
                          "no full stroke found");

    const double rate_over_l0 = ds.meta.travel_rate / ds.meta.l0;
    std::vector<CurvePoint> raw;
    auto add_compression = [&] {
        for (std::size_t i = 0; i <= turn; ++i)
            raw.push_back({rate_over_l0 * (s[i].time - s[0].time),
                           std::max(0.0, s[i].force)});
    };
    auto add_return = [&] {
        const double eps_turn = rate_over_l0 * (s[turn].time - s[0].time);
        for (std::size_t i = turn; i < s.size(); ++i)
            raw.push_back({eps_turn - rate_over_l0 * (s[i].time - s[turn].time),
                           std::max(0.0, s[i].force)});
    };
    switch (stroke) {
        case Stroke::compression: add_compression(); break;
        case Stroke::return_stroke: add_return(); break;
        case Stroke::both: add_compression(); add_return(); break;
    }

    std::sort(raw.begin(), raw.end(),
              [](const CurvePoint& a, const CurvePoint& b) { return a.strain < b.strain; });

    ForceStrainCurve curve;
    curve.pressure = ds.meta.pressure;
    curve.label = "fr=" + std::to_string(ds.meta.fold_ratio);
    for (std::size_t i = 0; i < raw.size();) {
        std::size_t j = i;
        double sum = 0.0;
        while (j < raw.size() && raw[j].strain == raw[i].strain) sum += raw[j++].force;
        curve.points.push_back({raw[i].strain, sum / (j - i)});
        i = j;
    }
    return curve;
}

KinkReport detect_kink(const ForceStrainCurve& curve) {
    const auto& pts = curve.points;
    if (pts.size() < 8)
        throw domain_error("detect_kink: needs at least 8 points");

    const LineFit one = fit_line(pts, 0, pts.size() - 1);

    KinkReport report;
    double best_sse = 1e300;
    std::size_t best_split = 0;
    LineFit best_lo, best_hi;
    // Each side keeps at least 3 points; the split sample belongs to both.
    for (std::size_t i = 2; i + 3 <= pts.size(); ++i) {
        const LineFit lo = fit_line(pts, 0, i);
        const LineFit hi = fit_line(pts, i, pts.size() - 1);
        if (lo.sse + hi.sse < best_sse) {
            best_sse = lo.sse + hi.sse;
            best_split = i;
            best_lo = lo;
            best_hi = hi;
        }
    }

    report.eps_break = pts[best_split].strain;
    report.slope_low = best_lo.slope;
    report.slope_high = best_hi.slope;
    report.sse_ratio = one.sse > 0.0 ? best_sse / one.sse : 1.0;

    const double slope_scale = std::max(std::fabs(best_lo.slope), std::fabs(best_hi.slope));
    const bool slope_gate = slope_scale > 0.0 &&
        std::fabs(best_hi.slope - best_lo.slope) >= 0.25 * slope_scale;
    report.has_kink = report.sse_ratio <= 0.5 && slope_gate;
    return report;
}

Surrogate::Surrogate(std::vector<double> fr_grid, std::vector<double> strain_grid,
                     std::vector<std::vector<double>> forces, double p_ref)
    : fr_grid_(std::move(fr_grid)), strain_grid_(std::move(strain_grid)),
      forces_(std::move(forces)), p_ref_(p_ref) {
    if (fr_grid_.size() < 2) throw domain_error("Surrogate: needs at least 2 fold ratios");
    if (forces_.size() != fr_grid_.size())
        throw domain_error("Surrogate: forces/fold-ratio size mismatch");
    for (const auto& row : forces_)
        if (row.size() != strain_grid_.size())
            throw domain_error("Surrogate: forces/strain-grid size mismatch");
    if (!(p_ref_ > 0.0)) throw domain_error("Surrogate: reference pressure must be positive");
}

double Surrogate::force(double fr, double eps, double pressure) const {
    if (!(pressure > 0.0)) throw domain_error("surrogate_force: pressure must be positive");
    if (fr < fr_grid_.front() - 1e-12 || fr > fr_grid_.back() + 1e-12)
        throw domain_error("surrogate_force: fold ratio " + std::to_string(fr) +
                           " outside the grid hull [" + std::to_string(fr_grid_.front()) +
                           ", " + std::to_string(fr_grid_.back()) + "]");
    fr = std::clamp(fr, fr_grid_.front(), fr_grid_.back());
    if (eps >= strain_grid_.back()) return 0.0;
    eps = std::max(eps, strain_grid_.front());

    const auto fit = std::upper_bound(fr_grid_.begin(), fr_grid_.end(), fr);
    const std::size_t hi = std::min<std::size_t>(fr_grid_.size() - 1,
                                                 fit - fr_grid_.begin());
    const std::size_t lo = hi == 0 ? 0 : hi - 1;
    const double w = hi == lo ? 0.0 : (fr - fr_grid_[lo]) / (fr_grid_[hi] - fr_grid_[lo]);

    const auto eit = std::upper_bound(strain_grid_.begin(), strain_grid_.end(), eps);
    const std::size_t ehi = std::min<std::size_t>(strain_grid_.size() - 1,
                                                  eit - strain_grid_.begin());
    const std::size_t elo = ehi == 0 ? 0 : ehi - 1;
    const double t = ehi == elo ? 0.0
        : (eps - strain_grid_[elo]) / (strain_grid_[ehi] - strain_grid_[elo]);

    auto row_value = [&](std::size_t r) {
        return forces_[r][elo] + t * (forces_[r][ehi] - forces_[r][elo]);
    };
    const double f = row_value(lo) + w * (row_value(hi) - row_value(lo));
    return std::max(0.0, f) * pressure / p_ref_;
}

Surrogate build_surrogate(const std::vector<double>& fr_values,
                          const std::vector<ForceStrainCurve>& curves,
                          double p_ref, int grid_points) {
    if (fr_values.size() != curves.size())
        throw domain_error("build_surrogate: fold-ratio/curve count mismatch");
    if (fr_values.size() < 2)
        throw domain_error("build_surrogate: needs at least 2 fold ratios");
    if (grid_points < 2)
        throw domain_error("build_surrogate: needs at least 2 grid points");

    std::vector<std::size_t> order(fr_values.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return fr_values[a] < fr_values[b]; });

    double eps_hi = 0.0;
    std::vector<double> fr_grid;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& c = curves[order[k]];
        if (c.points.size() < 2)
            throw domain_error("build_surrogate: curve for f_r = " +
                               std::to_string(fr_values[order[k]]) + " too short");
        if (std::fabs(c.pressure - p_ref) > 1e-9 * std::fabs(p_ref))
            throw domain_error("build_surrogate: curve for f_r = " +
                               std::to_string(fr_values[order[k]]) +
                               " not at the reference pressure");
        if (k > 0 && fr_values[order[k]] == fr_grid.back())
            throw domain_error("build_surrogate: duplicate fold ratio " +
                               std::to_string(fr_grid.back()));
        fr_grid.push_back(fr_values[order[k]]);
        eps_hi = std::max(eps_hi, c.max_strain());
    }

    std::vector<double> strain_grid(grid_points);
    for (int i = 0; i < grid_points; ++i)
        strain_grid[i] = eps_hi * i / (grid_points - 1);

    std::vector<std::vector<double>> forces;
    forces.reserve(order.size());
    for (std::size_t k : order) {
        std::vector<double> row(strain_grid.size());
        for (std::size_t i = 0; i < strain_grid.size(); ++i)
            row[i] = curves[k].force_at_clamped(strain_grid[i]);
        forces.push_back(std::move(row));
    }
    return Surrogate(std::move(fr_grid), std::move(strain_grid), std::move(forces), p_ref);
}

double surrogate_force(const Surrogate& s, double fr, double eps, double pressure) {
    return s.force(fr, eps, pressure);
}

MeasurementDataset make_synthetic_dataset(const ForceStrainCurve& truth,
                                          const DatasetMeta& meta,
                                          double noise_sd, unsigned seed) {
    if (const char* env = std::getenv("FOLDPAM_SEED"))
        seed = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
    std::mt19937 rng(seed);
    std::normal_distribution<double> noise(0.0, noise_sd);

    const double eps_end = truth.max_strain();
    const double dt = 1.0 / meta.sample_rate;
    const double rate_over_l0 = meta.travel_rate / meta.l0;
    const double t_turn = eps_end / rate_over_l0;

    MeasurementDataset ds;
    ds.meta = meta;
    double t = 0.0;
    // compression stroke
    for (; t <= t_turn; t += dt) {
        const double f = truth.force_at_clamped(rate_over_l0 * t) +
                         (noise_sd > 0.0 ? noise(rng) : 0.0);
        ds.samples.push_back({t, std::max(-0.049, f)});
    }
    // return stroke
    for (; t <= 2.0 * t_turn; t += dt) {
        const double eps = eps_end - rate_over_l0 * (t - t_turn);
        const double f = truth.force_at_clamped(eps) + (noise_sd > 0.0 ? noise(rng) : 0.0);
        ds.samples.push_back({t, std::max(-0.049, f)});
    }
    return ds;
}

}  // namespace foldpam
