#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "foldpam/empirical.hpp"
#include "foldpam/geometry.hpp"

namespace foldpam {

// Tendon-driven fold servo: rate-limited angle tracking with a backlash
// band equal to rate_limit * backlash_dead_time degrees of lost motion, so
// a full-speed step produces fold motion only after the dead time.
struct ServoModel {
    double angle = 0.0;             // degrees, actual shaft position
    double output_angle = 0.0;      // degrees, after the backlash band
    double rate_limit = 160.0;      // degrees/second
    double backlash_dead_time = 0.2;  // seconds of full-rate lost motion
    double angle_min = 0.0;
    double angle_max = 160.0;
    std::vector<double> angle_to_wf = {0.0, 67e-3 / 160.0};  // wf [m] poly in degrees
    bool last_cmd_clamped = false;

    double wf() const;  // folded width produced at output_angle
    double backlash_band() const { return rate_limit * backlash_dead_time; }
};

ServoModel servo_step(ServoModel s, double cmd_deg, double dt);

// Angle producing a given folded width, inverted through the polynomial.
double servo_angle_for_wf(const ServoModel& s, double wf);

// Supply valve with leak-limited delivery: actual pressure relaxes first
// order toward leak_gain * commanded + leak_offset.
struct ValveModel {
    double commanded = 0.0;     // Pa, after saturation
    double actual = 0.0;        // Pa at the pouch
    double leak_gain = 0.61836;     // fitted to the 6.9->3.9 / 27.6->16.7 kPa endpoints
    double leak_offset = -366.67;   // Pa
    double sat_lo = 6.9e3;
    double sat_hi = 27.6e3;
    double time_constant = 0.05;  // s

    double steady_state(double cmd) const;
};

ValveModel valve_step(ValveModel v, double cmd_pa, double dt);

struct PiController {
    double kp = 0.0;
    double ki = 0.0;
    double integral = 0.0;  // accumulated error * time
    double out_lo = 0.0;
    double out_hi = 1.0;
    bool anti_windup = true;
};

struct PiResult {
    double command;
    PiController controller;
};

// command = clamp(kp*e + ki*integral), e = setpoint - measurement; the
// integral is frozen across saturated steps when anti_windup is set.
PiResult pi_update(PiController c, double setpoint, double measurement, double dt);

// Quasi-static plant: force provider plus the strain domain it covers.
struct Plant {
    std::function<double(double fr, double eps, double pressure)> force;
    std::function<double(double fr)> eps_lo;
    std::function<double(double fr)> eps_hi;  // zero-force strain
    double fr_min = 0.0;
    double fr_max = kMaxFoldRatio;
};

struct EquilibriumResult {
    double strain;
    bool saturated;  // load exceeded the available force; pinned at eps_lo
};

// Unique strain where the (nonincreasing) model force balances the load.
EquilibriumResult plant_equilibrium(const Plant& plant, double fr, double pressure,
                                    double load, double tol = 1e-10);

struct TraceRow {
    double time;        // s
    double command;     // degrees (geometry) or Pa (pressure)
    double fold_ratio;
    double pressure;    // Pa
    double position;    // m of contraction displacement, l0 * eps
    double load;        // N
    double error;       // m, setpoint - position
};

struct SimTrace {
    std::vector<TraceRow> rows;
    double loop_rate = 6.0;          // Hz
    double actuation_range = 0.0;    // m of position authority at final load
    double setpoint = 0.0;           // m
};

std::string trace_to_csv(const SimTrace& trace);  // mm / kPa at the boundary

enum class ControlChannel { geometry, pressure, open_loop_ramp };

// Synthetic linear curve family used as the default scenario plant:
// F(fr, eps, P) = f_ref * (P/p_ref) * (1 - eps/eps_max(fr)),
// eps_max(fr) = emax_intercept + emax_slope * fr.
struct LinearPlantSpec {
    double f_ref = 6.0;           // N at p_ref
    double p_ref = 8.0e3;         // Pa
    double emax_intercept = 0.05;
    double emax_slope = 0.45;
    double fr_max = 0.745;
    int grid_points = 25;
};

// Builds the linear family through the surrogate machinery.
Surrogate linear_plant_surrogate(const LinearPlantSpec& spec, int samples_per_curve = 64);

struct LoadStep {
    double time;  // s
    double load;  // N
};

struct ScenarioConfig {
    ControlChannel channel = ControlChannel::geometry;
    double duration = 10.0;    // s
    double loop_rate = 6.0;    // Hz
    double pressure = 8.0e3;   // Pa, constant supply for the geometry channel
    double initial_fold_ratio = 0.0;
    std::vector<LoadStep> load_schedule = {{0.0, 0.0}};
    std::optional<double> setpoint;  // m; defaults to the initial equilibrium

    Geometry geometry{90e-3, 90e-3, 0.0, 9e-3};
    LinearPlantSpec plant;
    ServoModel servo;
    ValveModel valve;
    PiController controller;  // gains filled per channel when left at zero
};

ScenarioConfig scenario_open_loop_ramp();
ScenarioConfig scenario_geometry_step_load();
ScenarioConfig scenario_pressure_step_load();

// Named lookup for the CLI: open-loop-ramp, geometry-step-load,
// pressure-step-load.
ScenarioConfig builtin_scenario(const std::string& name);

ScenarioConfig scenario_from_json(std::istream& in);

SimTrace run_scenario(const ScenarioConfig& cfg);

}  // namespace foldpam
