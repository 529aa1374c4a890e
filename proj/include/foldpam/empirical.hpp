#pragma once

#include <istream>
#include <string>
#include <vector>

#include "foldpam/curve.hpp"

namespace foldpam {

// Sidecar metadata for one test-stand recording. SI units internally; the
// JSON sidecar carries mm / kPa / mm-per-min and is converted on load.
struct DatasetMeta {
    double pressure;     // Pa
    double l0;           // m
    double w0;           // m
    double fold_ratio;   // dimensionless
    double travel_rate;  // m/s
    double sample_rate;  // Hz
};

struct MeasurementSample {
    double time;   // s
    double force;  // N
};

struct MeasurementDataset {
    std::vector<MeasurementSample> samples;
    DatasetMeta meta;
};

// Sidecar JSON with keys pressure_kpa, l0_mm, w0_mm, fold_ratio,
// travel_rate_mm_per_min, sample_rate_hz.
DatasetMeta meta_from_json(std::istream& in);

// Force-gauge CSV, header `time_s,force_n`. Rejects non-monotone time and
// forces below the -0.05 N noise floor, naming the offending line.
MeasurementDataset load_measurements(std::istream& source, const DatasetMeta& meta);

enum class Stroke { compression, return_stroke, both };

// Converts a recording to a strain-ordered curve using the constant travel
// rate: strain(t) = travel_rate * (t - t_turnaround-relative) / l0. The
// turnaround is located at the force minimum; duplicate strains average.
ForceStrainCurve dataset_to_curve(const MeasurementDataset& ds,
                                  Stroke stroke = Stroke::compression);

struct KinkReport {
    bool has_kink = false;
    double eps_break = 0.0;
    double slope_low = 0.0;   // N per unit strain, below the break
    double slope_high = 0.0;  // above the break
    double sse_ratio = 1.0;   // two-segment SSE / one-segment SSE
};

// Two-segment least-squares fit with the breakpoint searched over interior
// sample points. A kink requires the two-segment SSE to be at most half the
// one-segment SSE and a relative slope change of at least 25%.
KinkReport detect_kink(const ForceStrainCurve& curve);

// Interpolated empirical model force = S(f_r, eps, P): curves resampled on
// a common strain grid, bilinear in (f_r, eps), linear pressure scaling.
class Surrogate {
public:
    Surrogate(std::vector<double> fr_grid, std::vector<double> strain_grid,
              std::vector<std::vector<double>> forces, double p_ref);

    const std::vector<double>& fr_grid() const { return fr_grid_; }
    const std::vector<double>& strain_grid() const { return strain_grid_; }
    double p_ref() const { return p_ref_; }

    double fr_min() const { return fr_grid_.front(); }
    double fr_max() const { return fr_grid_.back(); }
    double max_strain() const { return strain_grid_.back(); }

    double force(double fr, double eps, double pressure) const;

private:
    std::vector<double> fr_grid_;
    std::vector<double> strain_grid_;
    std::vector<std::vector<double>> forces_;  // [fr index][strain index]
    double p_ref_;
};

// Builds the surrogate from per-f_r curves sharing the reference pressure.
Surrogate build_surrogate(const std::vector<double>& fr_values,
                          const std::vector<ForceStrainCurve>& curves,
                          double p_ref, int grid_points = 512);

double surrogate_force(const Surrogate& s, double fr, double eps, double pressure);

// Synthetic test-stand recording generated from a known curve following the
// measurement protocol (compression stroke then return) with Gaussian force
// noise. Seed comes from FOLDPAM_SEED when set, else from `seed`.
MeasurementDataset make_synthetic_dataset(const ForceStrainCurve& truth,
                                          const DatasetMeta& meta,
                                          double noise_sd, unsigned seed = 1234);

}  // namespace foldpam
