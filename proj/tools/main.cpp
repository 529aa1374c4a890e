#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "foldpam/control.hpp"
#include "foldpam/design_space.hpp"
#include "foldpam/empirical.hpp"
#include "foldpam/errors.hpp"
#include "foldpam/io.hpp"
#include "foldpam/models.hpp"
#include "foldpam/plot.hpp"

namespace {

using namespace foldpam;

// Bench units at the boundary (mm, kPa), SI inside.
constexpr double kMm = 1e-3;
constexpr double kKpa = 1e3;

struct GeometryFlags {
    double w0_mm = 50.0;
    double l0_mm = 50.0;
    double wf_mm = 0.0;
    double h_mm = 5.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--w0-mm", w0_mm, "Unfolded width W0 [mm]")->check(CLI::PositiveNumber);
        cmd->add_option("--l0-mm", l0_mm, "Initial length l0 [mm]")->check(CLI::PositiveNumber);
        cmd->add_option("--wf-mm", wf_mm, "Folded width wf [mm]")->check(CLI::NonNegativeNumber);
        cmd->add_option("--h-mm", h_mm, "Overall thickness h [mm]")->check(CLI::PositiveNumber);
    }
    Geometry build() const {
        return Geometry(w0_mm * kMm, l0_mm * kMm, wf_mm * kMm, h_mm * kMm);
    }
};

ModelKind parse_model(const std::string& name) {
    if (name == "pouch") return ModelKind::pouch;
    if (name == "ppam") return ModelKind::ppam;
    throw domain_error("unknown model '" + name + "'; expected pouch or ppam");
}

FamilyPolicy parse_policy(const std::string& name) {
    if (name == "pouch") return FamilyPolicy::pouch;
    if (name == "pouch-folded") return FamilyPolicy::pouch_folded;
    if (name == "ppam") return FamilyPolicy::ppam;
    if (name == "auto") return FamilyPolicy::auto_by_fold;
    throw domain_error("unknown policy '" + name + "'; expected pouch, pouch-folded, ppam or auto");
}

std::vector<double> parse_fr_list(const std::string& spec) {
    std::string body = spec;
    if (body.rfind("fr=", 0) == 0) body = body.substr(3);
    std::vector<double> values;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        values.push_back(std::stod(item));
    }
    if (values.empty()) throw domain_error("empty fold-ratio family '" + spec + "'");
    return values;
}

int cmd_curve(const GeometryFlags& geom, const std::string& model, double pressure_kpa,
              int n, const std::string& out, const std::string& format,
              const std::string& plot) {
    auto curve = sample_curve(parse_model(model), geom.build(), pressure_kpa * kKpa, n);
    curve.label = model;
    atomic_write_file(out, format == "json" ? curve_to_json(curve) : curve_to_csv(curve));
    if (!plot.empty()) atomic_write_file(plot, plot_curves_svg({curve}));
    return 0;
}

int cmd_design_space(const GeometryFlags& geom, const std::string& family,
                     const std::string& policy, double pressure_kpa,
                     const std::string& out, const std::string& format,
                     const std::string& plot, const std::string& curves_out) {
    const Geometry base = geom.build();
    const auto curves = curve_family(base, pressure_kpa * kKpa, parse_fr_list(family),
                                     parse_policy(policy));
    const auto region = region_area(curves, base);
    RegionReport report{region.area, region.normalized, {}};
    for (const auto& c : curves) report.curve_labels.push_back(c.label);

    if (format == "csv") {
        std::ostringstream csv;
        csv << "area_n,a_d_prime\n" << report.area_n << "," << report.a_d_prime << "\n";
        atomic_write_file(out, csv.str());
    } else {
        atomic_write_file(out, region_report_to_json(report));
    }
    if (!curves_out.empty()) atomic_write_file(curves_out, curves_to_json(curves));
    if (!plot.empty()) atomic_write_file(plot, plot_curves_svg(curves));
    return 0;
}

int cmd_fit(const std::string& data, const std::string& meta, const std::string& stroke,
            const std::string& out, const std::string& format,
            const std::string& kink_out, const std::string& plot) {
    std::ifstream meta_in(meta);
    if (!meta_in) throw io_error("cannot open metadata file " + meta);
    const DatasetMeta m = meta_from_json(meta_in);

    std::ifstream data_in(data);
    if (!data_in) throw io_error("cannot open measurement file " + data);
    const auto ds = load_measurements(data_in, m);

    Stroke s = Stroke::compression;
    if (stroke == "return") s = Stroke::return_stroke;
    else if (stroke == "both") s = Stroke::both;
    else if (stroke != "compression")
        throw domain_error("unknown stroke '" + stroke + "'; expected compression, return or both");

    const auto curve = dataset_to_curve(ds, s);
    atomic_write_file(out, format == "json" ? curve_to_json(curve) : curve_to_csv(curve));

    if (!kink_out.empty()) {
        const auto kink = detect_kink(curve);
        std::ostringstream j;
        j << "{\n  \"has_kink\": " << (kink.has_kink ? "true" : "false")
          << ",\n  \"eps_break\": " << kink.eps_break
          << ",\n  \"slope_low\": " << kink.slope_low
          << ",\n  \"slope_high\": " << kink.slope_high
          << ",\n  \"sse_ratio\": " << kink.sse_ratio << "\n}\n";
        atomic_write_file(kink_out, j.str());
    }
    if (!plot.empty()) atomic_write_file(plot, plot_curves_svg({curve}));
    return 0;
}

int cmd_simulate(const std::string& scenario, const std::string& config,
                 const std::string& out, const std::string& plot) {
    ScenarioConfig cfg;
    if (!config.empty()) {
        std::ifstream in(config);
        if (!in) throw io_error("cannot open scenario config " + config);
        cfg = scenario_from_json(in);
    } else {
        cfg = builtin_scenario(scenario);
    }
    const auto trace = run_scenario(cfg);
    atomic_write_file(out, trace_to_csv(trace));
    if (!plot.empty()) atomic_write_file(plot, plot_trace_svg(trace));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"foldPAM actuator modeling, design-space exploration and control simulation"};
    app.require_subcommand(1);

    GeometryFlags geom;
    std::string model = "pouch", policy = "auto", family = "0,0.2,0.4,0.52,0.67";
    std::string out, format = "csv", ds_format = "json", plot, curves_out;
    std::string data, meta, stroke = "compression", kink_out;
    std::string scenario = "geometry-step-load", config;
    double pressure_kpa = 12.4;
    int n = 201;

    auto* curve = app.add_subcommand("curve", "Sample an analytic force-strain curve");
    geom.attach(curve);
    curve->add_option("--model", model, "pouch or ppam");
    curve->add_option("--pressure-kpa", pressure_kpa, "Internal pressure [kPa]")
        ->check(CLI::PositiveNumber);
    curve->add_option("-n,--samples", n, "Number of samples")->check(CLI::Range(2, 100000));
    curve->add_option("-o,--output", out, "Output file")->required();
    curve->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    curve->add_option("--plot", plot, "Also write an SVG plot");

    auto* ds = app.add_subcommand("design-space", "Curve family and swept-area report");
    geom.attach(ds);
    ds->add_option("--family", family, "Fold-ratio list, e.g. fr=0,0.2,0.4,0.52,0.67");
    ds->add_option("--policy", policy, "pouch, pouch-folded, ppam or auto");
    ds->add_option("--pressure-kpa", pressure_kpa, "Internal pressure [kPa]")
        ->check(CLI::PositiveNumber);
    ds->add_option("-o,--output", out, "Region report output")->required();
    ds->add_option("--format", ds_format, "json or csv")->check(CLI::IsMember({"csv", "json"}));
    ds->add_option("--curves", curves_out, "Also write the curve family as JSON");
    ds->add_option("--plot", plot, "Also write an SVG plot of the family");

    auto* fit = app.add_subcommand("fit", "Convert test-stand data to a curve and analyze it");
    fit->add_option("--data", data, "Measurement CSV (time_s,force_n)")->required();
    fit->add_option("--meta", meta, "Metadata sidecar JSON")->required();
    fit->add_option("--stroke", stroke, "compression, return or both");
    fit->add_option("-o,--output", out, "Fitted curve output")->required();
    fit->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    fit->add_option("--kink-report", kink_out, "Also write a kink-detection JSON report");
    fit->add_option("--plot", plot, "Also write an SVG plot");

    auto* sim = app.add_subcommand("simulate", "Run a control-simulation scenario");
    sim->add_option("--scenario", scenario,
                    "open-loop-ramp, geometry-step-load or pressure-step-load");
    sim->add_option("--config", config, "Scenario config JSON (overrides --scenario)");
    sim->add_option("-o,--output", out, "Trace CSV output")->required();
    sim->add_option("--plot", plot, "Also write an SVG plot (command + error panels)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors exit 2
    }

    try {
        if (curve->parsed())
            return cmd_curve(geom, model, pressure_kpa, n, out, format, plot);
        if (ds->parsed())
            return cmd_design_space(geom, family, policy, pressure_kpa, out, ds_format, plot,
                                    curves_out);
        if (fit->parsed())
            return cmd_fit(data, meta, stroke, out, format, kink_out, plot);
        if (sim->parsed())
            return cmd_simulate(scenario, config, out, plot);
    } catch (const io_error& e) {
        std::cerr << "error: io: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
