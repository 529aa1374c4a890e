#include "foldpam/control.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "foldpam/errors.hpp"
#include "foldpam/numerics.hpp"

namespace foldpam {

namespace {

double poly_eval(const std::vector<double>& coeffs, double x) {
    double v = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
    return v;
}

double fmt_cell(double v) { return v == 0.0 ? 0.0 : v; }  // normalize -0

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", fmt_cell(v));
    return buf;
}

double schedule_load(const std::vector<LoadStep>& schedule, double t) {
    double load = 0.0;
    for (const auto& s : schedule)
        if (s.time <= t + 1e-12) load = s.load;
    return load;
}

}  // namespace

double ServoModel::wf() const { return poly_eval(angle_to_wf, output_angle); }

ServoModel servo_step(ServoModel s, double cmd_deg, double dt) {
    if (!(dt > 0.0)) throw domain_error("servo_step: dt must be positive");
    const double cmd = std::clamp(cmd_deg, s.angle_min, s.angle_max);
    s.last_cmd_clamped = cmd != cmd_deg;

    const double max_move = s.rate_limit * dt;
    const double delta = std::clamp(cmd - s.angle, -max_move, max_move);
    s.angle += delta;

    // Backlash: the fold output trails the shaft by up to one band of lost
    // motion, so a full-rate start moves wf only after the dead time.
    const double band = s.backlash_band();
    if (s.angle > s.output_angle + band)
        s.output_angle = s.angle - band;
    else if (s.angle < s.output_angle - band)
        s.output_angle = s.angle + band;
    return s;
}

double servo_angle_for_wf(const ServoModel& s, double wf) {
    const double wf_lo = poly_eval(s.angle_to_wf, s.angle_min);
    const double wf_hi = poly_eval(s.angle_to_wf, s.angle_max);
    if (wf <= wf_lo) return s.angle_min;
    if (wf >= wf_hi) return s.angle_max;
    return find_root_bracketed(
        [&](double a) { return poly_eval(s.angle_to_wf, a) - wf; },
        s.angle_min, s.angle_max, 1e-10);
}

double ValveModel::steady_state(double cmd) const {
    return leak_gain * std::clamp(cmd, sat_lo, sat_hi) + leak_offset;
}

ValveModel valve_step(ValveModel v, double cmd_pa, double dt) {
    if (!(dt > 0.0)) throw domain_error("valve_step: dt must be positive");
    v.commanded = std::clamp(cmd_pa, v.sat_lo, v.sat_hi);
    const double target = v.leak_gain * v.commanded + v.leak_offset;
    const double alpha = v.time_constant > 0.0 ? 1.0 - std::exp(-dt / v.time_constant) : 1.0;
    v.actual += alpha * (target - v.actual);
    return v;
}

PiResult pi_update(PiController c, double setpoint, double measurement, double dt) {
    if (!(dt > 0.0)) throw domain_error("pi_update: dt must be positive");
    const double e = setpoint - measurement;
    const double integral_next = c.integral + e * dt;
    const double raw = c.kp * e + c.ki * integral_next;
    double command = std::clamp(raw, c.out_lo, c.out_hi);
    if (command == raw || !c.anti_windup) {
        c.integral = integral_next;
    }
    return {command, c};
}

EquilibriumResult plant_equilibrium(const Plant& plant, double fr, double pressure,
                                    double load, double tol) {
    if (load < 0.0) throw domain_error("plant_equilibrium: negative load");
    if (fr < plant.fr_min - 1e-12 || fr > plant.fr_max + 1e-12)
        throw domain_error("plant_equilibrium: fold ratio outside the plant domain");
    fr = std::clamp(fr, plant.fr_min, plant.fr_max);

    const double lo = plant.eps_lo(fr);
    const double hi = plant.eps_hi(fr);
    const double f_lo = plant.force(fr, lo, pressure);
    if (load > f_lo) return {lo, true};
    const double f_hi = plant.force(fr, hi, pressure);
    if (load <= f_hi) return {hi, false};
    const double eps = find_root_bracketed(
        [&](double e) { return plant.force(fr, e, pressure) - load; }, lo, hi, tol);
    return {eps, false};
}

std::string trace_to_csv(const SimTrace& trace) {
    std::ostringstream out;
    out << "time_s,command,fold_ratio,pressure_kpa,position_mm,load_n,error_mm\n";
    for (const auto& r : trace.rows) {
        out << format_double(r.time) << "," << format_double(r.command) << ","
            << format_double(r.fold_ratio) << "," << format_double(r.pressure / 1e3) << ","
            << format_double(r.position * 1e3) << "," << format_double(r.load) << ","
            << format_double(r.error * 1e3) << "\n";
    }
    return out.str();
}

Surrogate linear_plant_surrogate(const LinearPlantSpec& spec, int samples_per_curve) {
    std::vector<double> frs;
    std::vector<ForceStrainCurve> curves;
    for (int i = 0; i < spec.grid_points; ++i) {
        const double fr = spec.fr_max * i / (spec.grid_points - 1);
        const double emax = spec.emax_intercept + spec.emax_slope * fr;
        ForceStrainCurve c;
        c.pressure = spec.p_ref;
        for (int k = 0; k < samples_per_curve; ++k) {
            const double eps = emax * k / (samples_per_curve - 1);
            c.points.push_back({eps, spec.f_ref * (1.0 - eps / emax)});
        }
        frs.push_back(fr);
        curves.push_back(std::move(c));
    }
    return build_surrogate(frs, curves, spec.p_ref);
}

namespace {

Plant surrogate_plant(const Surrogate& s) {
    Plant plant;
    plant.fr_min = s.fr_min();
    plant.fr_max = s.fr_max();
    plant.force = [&s](double fr, double eps, double p) { return s.force(fr, eps, p); };
    plant.eps_lo = [](double) { return 0.0; };
    plant.eps_hi = [&s](double fr) {
        // Zero-force boundary: smallest strain where the member force has
        // decayed to ~0 (force is nonincreasing then clamped at zero).
        const double f0 = s.force(fr, 0.0, s.p_ref());
        const double thresh = 1e-12 * f0;
        const double hi = s.max_strain();
        if (s.force(fr, hi * (1.0 - 1e-12), s.p_ref()) > thresh) return hi;
        return find_root_bracketed(
            [&](double e) { return s.force(fr, e, s.p_ref()) - thresh; }, 0.0, hi, 1e-12);
    };
    return plant;
}

void apply_default_gains(ScenarioConfig& cfg) {
    if (cfg.controller.kp != 0.0 || cfg.controller.ki != 0.0) return;
    if (cfg.channel == ControlChannel::pressure) {
        cfg.controller.kp = 1.0e4;  // kPa per meter of position error
        cfg.controller.ki = 3.0e4;
        cfg.controller.out_lo = cfg.valve.sat_lo / 1e3;
        cfg.controller.out_hi = cfg.valve.sat_hi / 1e3;
    } else {
        cfg.controller.kp = 8.0e3;  // degrees per meter of position error
        cfg.controller.ki = 2.5e4;
        cfg.controller.out_lo = cfg.servo.angle_min;
        cfg.controller.out_hi = cfg.servo.angle_max;
    }
    cfg.controller.anti_windup = true;
}

}  // namespace

SimTrace run_scenario(const ScenarioConfig& cfg) {
    if (!(cfg.loop_rate > 0.0)) throw domain_error("run_scenario: loop rate must be positive");
    if (!(cfg.duration > 0.0)) throw domain_error("run_scenario: duration must be positive");

    ScenarioConfig c = cfg;
    apply_default_gains(c);

    const Surrogate surrogate = linear_plant_surrogate(c.plant);
    const Plant plant = surrogate_plant(surrogate);
    const double l0 = c.geometry.l0();
    const double w0 = c.geometry.w0();
    const double dt = 1.0 / c.loop_rate;

    // Feasibility: the heaviest scheduled load must be within the force the
    // most capable command can deliver at zero strain.
    double max_load = 0.0;
    for (const auto& s : c.load_schedule) max_load = std::max(max_load, s.load);
    const double p_cap = c.channel == ControlChannel::pressure
                             ? c.valve.steady_state(c.valve.sat_hi)
                             : c.pressure;
    const double cap = plant.force(plant.fr_min, 0.0, p_cap);
    if (max_load > cap)
        throw solve_error("run_scenario: scheduled load " + std::to_string(max_load) +
                          " N exceeds the " + std::to_string(cap) +
                          " N available at the saturation boundary");

    ServoModel servo = c.servo;
    servo.angle = servo_angle_for_wf(servo, c.initial_fold_ratio * w0);
    servo.output_angle = servo.angle;

    ValveModel valve = c.valve;
    double cmd0_kpa = 0.0;
    if (c.channel == ControlChannel::pressure) {
        // Start at the supply command whose leaked steady state matches the
        // configured pressure.
        cmd0_kpa = std::clamp((c.pressure - valve.leak_offset) / valve.leak_gain,
                              valve.sat_lo, valve.sat_hi) / 1e3;
        valve.commanded = cmd0_kpa * 1e3;
        valve.actual = valve.steady_state(valve.commanded);
    }

    auto current_fr = [&]() {
        if (c.channel == ControlChannel::pressure) return c.initial_fold_ratio;
        return std::clamp(servo.wf() / w0, plant.fr_min, plant.fr_max);
    };
    auto current_pressure = [&]() {
        return c.channel == ControlChannel::pressure ? valve.actual : c.pressure;
    };

    const double load0 = schedule_load(c.load_schedule, 0.0);
    const auto eq0 = plant_equilibrium(plant, current_fr(), current_pressure(), load0);
    const double setpoint = c.setpoint.value_or(l0 * eq0.strain);

    PiController pi = c.controller;
    if (pi.ki != 0.0) {
        // Bumpless start: bias the integral so the initial command holds the
        // actuator where it already is.
        const double u0 = c.channel == ControlChannel::pressure ? cmd0_kpa : servo.angle;
        pi.integral = u0 / pi.ki;
    }

    SimTrace trace;
    trace.loop_rate = c.loop_rate;
    trace.setpoint = setpoint;

    const long steps = std::lround(c.duration * c.loop_rate);
    for (long k = 0; k <= steps; ++k) {
        const double t = k * dt;
        const double load = schedule_load(c.load_schedule, t);
        const double fr = current_fr();
        const double pressure = current_pressure();
        const auto eq = plant_equilibrium(plant, fr, pressure, load);
        const double pos = l0 * eq.strain;
        const double err = setpoint - pos;

        double command;
        switch (c.channel) {
            case ControlChannel::open_loop_ramp:
                command = servo.angle_max;
                break;
            case ControlChannel::geometry: {
                auto [cmd, next] = pi_update(pi, setpoint, pos, dt);
                pi = next;
                command = cmd;
                break;
            }
            case ControlChannel::pressure: {
                auto [cmd, next] = pi_update(pi, setpoint, pos, dt);
                pi = next;
                command = cmd;  // kPa
                break;
            }
        }
        trace.rows.push_back({t, command, fr, pressure, pos, load, err});

        if (c.channel == ControlChannel::pressure)
            valve = valve_step(valve, command * 1e3, dt);
        else
            servo = servo_step(servo, command, dt);
    }

    // Position authority at the final load: full command sweep.
    const double load_end = schedule_load(c.load_schedule, c.duration);
    if (c.channel == ControlChannel::pressure) {
        const double p_lo = c.valve.steady_state(c.valve.sat_lo);
        const double p_hi = c.valve.steady_state(c.valve.sat_hi);
        const double z_lo = l0 * plant_equilibrium(plant, c.initial_fold_ratio, p_lo, load_end).strain;
        const double z_hi = l0 * plant_equilibrium(plant, c.initial_fold_ratio, p_hi, load_end).strain;
        trace.actuation_range = std::fabs(z_hi - z_lo);
    } else {
        const double fr_hi = std::clamp(poly_eval(c.servo.angle_to_wf, c.servo.angle_max) / w0,
                                        plant.fr_min, plant.fr_max);
        const double z_lo = l0 * plant_equilibrium(plant, plant.fr_min, c.pressure, load_end).strain;
        const double z_hi = l0 * plant_equilibrium(plant, fr_hi, c.pressure, load_end).strain;
        trace.actuation_range = std::fabs(z_hi - z_lo);
    }
    return trace;
}

ScenarioConfig scenario_open_loop_ramp() {
    ScenarioConfig cfg;
    cfg.channel = ControlChannel::open_loop_ramp;
    cfg.duration = 3.0;
    cfg.pressure = 8.0e3;
    cfg.initial_fold_ratio = 0.0;
    cfg.load_schedule = {{0.0, 1.0}};  // self weight, ~100 g
    return cfg;
}

ScenarioConfig scenario_geometry_step_load() {
    ScenarioConfig cfg;
    cfg.channel = ControlChannel::geometry;
    cfg.duration = 12.0;
    cfg.pressure = 3.9e3;
    cfg.initial_fold_ratio = 0.1;
    cfg.load_schedule = {{0.0, 0.0}, {1.0, 1.47}};  // 150 g step
    return cfg;
}

ScenarioConfig scenario_pressure_step_load() {
    ScenarioConfig cfg;
    cfg.channel = ControlChannel::pressure;
    cfg.duration = 12.0;
    cfg.pressure = 8.0e3;
    cfg.initial_fold_ratio = 0.0;
    cfg.load_schedule = {{0.0, 0.0}, {1.0, 1.47}};
    return cfg;
}

ScenarioConfig builtin_scenario(const std::string& name) {
    if (name == "open-loop-ramp") return scenario_open_loop_ramp();
    if (name == "geometry-step-load") return scenario_geometry_step_load();
    if (name == "pressure-step-load") return scenario_pressure_step_load();
    throw domain_error("unknown scenario '" + name + "'; expected open-loop-ramp, "
                       "geometry-step-load or pressure-step-load");
}

ScenarioConfig scenario_from_json(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("scenario config: invalid JSON: ") + e.what());
    }

    ScenarioConfig cfg = builtin_scenario(j.value("scenario", std::string("geometry-step-load")));
    if (j.contains("channel")) {
        const std::string ch = j["channel"].get<std::string>();
        if (ch == "geometry") cfg.channel = ControlChannel::geometry;
        else if (ch == "pressure") cfg.channel = ControlChannel::pressure;
        else if (ch == "open-loop-ramp") cfg.channel = ControlChannel::open_loop_ramp;
        else throw parse_error("scenario config: unknown channel '" + ch + "'");
    }
    cfg.duration = j.value("duration_s", cfg.duration);
    cfg.loop_rate = j.value("loop_rate_hz", cfg.loop_rate);
    cfg.pressure = j.value("pressure_kpa", cfg.pressure / 1e3) * 1e3;
    cfg.initial_fold_ratio = j.value("initial_fold_ratio", cfg.initial_fold_ratio);
    if (j.contains("setpoint_mm")) cfg.setpoint = j["setpoint_mm"].get<double>() * 1e-3;
    if (j.contains("load_schedule")) {
        cfg.load_schedule.clear();
        for (const auto& s : j["load_schedule"])
            cfg.load_schedule.push_back({s.at("t_s").get<double>(), s.at("load_n").get<double>()});
    }
    if (j.contains("geometry")) {
        const auto& g = j["geometry"];
        cfg.geometry = Geometry(g.value("w0_mm", 90.0) * 1e-3, g.value("l0_mm", 90.0) * 1e-3,
                                g.value("wf_mm", 0.0) * 1e-3, g.value("h_mm", 9.0) * 1e-3);
    }
    if (j.contains("plant")) {
        const auto& p = j["plant"];
        cfg.plant.f_ref = p.value("f_ref_n", cfg.plant.f_ref);
        cfg.plant.p_ref = p.value("p_ref_kpa", cfg.plant.p_ref / 1e3) * 1e3;
        cfg.plant.emax_intercept = p.value("emax_intercept", cfg.plant.emax_intercept);
        cfg.plant.emax_slope = p.value("emax_slope", cfg.plant.emax_slope);
        cfg.plant.fr_max = p.value("fr_max", cfg.plant.fr_max);
        cfg.plant.grid_points = p.value("grid_points", cfg.plant.grid_points);
    }
    if (j.contains("controller")) {
        const auto& c = j["controller"];
        cfg.controller.kp = c.value("kp", cfg.controller.kp);
        cfg.controller.ki = c.value("ki", cfg.controller.ki);
        cfg.controller.out_lo = c.value("out_lo", cfg.controller.out_lo);
        cfg.controller.out_hi = c.value("out_hi", cfg.controller.out_hi);
        cfg.controller.anti_windup = c.value("anti_windup", cfg.controller.anti_windup);
    }
    if (j.contains("servo")) {
        const auto& s = j["servo"];
        cfg.servo.rate_limit = s.value("rate_limit_deg_s", cfg.servo.rate_limit);
        cfg.servo.backlash_dead_time = s.value("backlash_dead_time_s", cfg.servo.backlash_dead_time);
        cfg.servo.angle_max = s.value("angle_max_deg", cfg.servo.angle_max);
        if (s.contains("wf_mm_per_deg"))
            cfg.servo.angle_to_wf = {0.0, s["wf_mm_per_deg"].get<double>() * 1e-3};
        if (s.contains("angle_to_wf_mm")) {
            cfg.servo.angle_to_wf.clear();
            for (const auto& coeff : s["angle_to_wf_mm"])
                cfg.servo.angle_to_wf.push_back(coeff.get<double>() * 1e-3);
        }
    }
    if (j.contains("valve")) {
        const auto& v = j["valve"];
        cfg.valve.leak_gain = v.value("leak_gain", cfg.valve.leak_gain);
        cfg.valve.leak_offset = v.value("leak_offset_kpa", cfg.valve.leak_offset / 1e3) * 1e3;
        cfg.valve.sat_lo = v.value("sat_lo_kpa", cfg.valve.sat_lo / 1e3) * 1e3;
        cfg.valve.sat_hi = v.value("sat_hi_kpa", cfg.valve.sat_hi / 1e3) * 1e3;
        cfg.valve.time_constant = v.value("time_constant_s", cfg.valve.time_constant);
    }
    return cfg;
}

}  // namespace foldpam
