#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "foldpam/control.hpp"
#include "foldpam/design_space.hpp"
#include "foldpam/empirical.hpp"
#include "foldpam/errors.hpp"
#include "foldpam/io.hpp"
#include "foldpam/models.hpp"
#include "foldpam/numerics.hpp"
#include "foldpam/plot.hpp"

namespace py = pybind11;
using namespace foldpam;

PYBIND11_MODULE(_foldpam, m) {
    m.doc() = "foldPAM actuator models, design-space analysis and control simulation";

    py::register_exception<domain_error>(m, "DomainError", PyExc_ValueError);
    py::register_exception<solve_error>(m, "SolveError", PyExc_RuntimeError);
    py::register_exception<parse_error>(m, "ParseError", PyExc_ValueError);

    // numeric kernels
    m.def("ellip_f", [](double phi, double mm) { return ellip_f({phi, mm}); },
          py::arg("phi"), py::arg("m"));
    m.def("ellip_e", [](double phi, double mm) { return ellip_e({phi, mm}); },
          py::arg("phi"), py::arg("m"));
    m.def("find_root_bracketed", &find_root_bracketed,
          py::arg("f"), py::arg("lo"), py::arg("hi"), py::arg("tol") = 1e-12);

    // geometry and models
    py::class_<Geometry>(m, "Geometry")
        .def(py::init<double, double, double, double>(),
             py::arg("w0"), py::arg("l0"), py::arg("wf"), py::arg("h"))
        .def_property_readonly("w0", &Geometry::w0)
        .def_property_readonly("l0", &Geometry::l0)
        .def_property_readonly("wf", &Geometry::wf)
        .def_property_readonly("h", &Geometry::h)
        .def_property_readonly("fold_ratio", &Geometry::fold_ratio)
        .def_property_readonly("aspect_ratio", &Geometry::aspect_ratio)
        .def("with_fold_ratio", &Geometry::with_fold_ratio, py::arg("fr"));

    m.def("wf_circ", &wf_circ, py::arg("l0"));

    py::class_<CurvePoint>(m, "CurvePoint")
        .def_readonly("strain", &CurvePoint::strain)
        .def_readonly("force", &CurvePoint::force);

    py::class_<ForceStrainCurve>(m, "ForceStrainCurve")
        .def_readonly("points", &ForceStrainCurve::points)
        .def_readonly("pressure", &ForceStrainCurve::pressure)
        .def_readonly("label", &ForceStrainCurve::label)
        .def("force_at", &ForceStrainCurve::force_at_clamped, py::arg("strain"))
        .def("max_strain", &ForceStrainCurve::max_strain)
        .def("max_force", &ForceStrainCurve::max_force)
        .def("to_csv", &curve_to_csv);

    py::enum_<ModelKind>(m, "ModelKind")
        .value("pouch", ModelKind::pouch)
        .value("ppam", ModelKind::ppam);

    m.def("pouch_point", [](const Geometry& g, double p, double theta) {
        const auto op = pouch_point(g, p, theta);
        return py::make_tuple(op.strain, op.force);
    }, py::arg("geom"), py::arg("pressure"), py::arg("theta"));
    m.def("pouch_force_at_strain",
          [](const Geometry& g, double p, double eps) { return pouch_force_at_strain(g, p, eps); },
          py::arg("geom"), py::arg("pressure"), py::arg("strain"));
    m.def("pouch_max_strain", &pouch_max_strain);
    m.def("pouch_volume", [](const Geometry& g, double theta) { return pouch_volume(g, theta); },
          py::arg("geom"), py::arg("theta"));
    m.def("ppam_solve", [](double r, double eps) {
        const auto s = ppam_solve(r, eps);
        return py::make_tuple(s.m, s.phi);
    }, py::arg("l0_over_h"), py::arg("strain"));
    m.def("ppam_max_strain", &ppam_max_strain, py::arg("l0_over_h"));
    m.def("ppam_force_at_strain", &ppam_force_at_strain,
          py::arg("geom"), py::arg("pressure"), py::arg("strain"));
    m.def("sample_curve",
          [](ModelKind kind, const Geometry& g, double p, int n) {
              return sample_curve(kind, g, p, n);
          },
          py::arg("model"), py::arg("geom"), py::arg("pressure"), py::arg("n") = 201);

    // design space
    m.def("curve_family",
          [](const Geometry& base, double p, const std::vector<double>& frs,
             const std::string& policy) {
              FamilyPolicy fp = FamilyPolicy::auto_by_fold;
              if (policy == "pouch") fp = FamilyPolicy::pouch;
              else if (policy == "pouch-folded") fp = FamilyPolicy::pouch_folded;
              else if (policy == "ppam") fp = FamilyPolicy::ppam;
              else if (policy != "auto") throw domain_error("unknown policy '" + policy + "'");
              return curve_family(base, p, frs, fp);
          },
          py::arg("base"), py::arg("pressure"), py::arg("fr_values"), py::arg("policy") = "auto");
    m.def("design_space_area", &design_space_area, py::arg("curves"));
    m.def("normalized_area", &normalized_area,
          py::arg("area"), py::arg("geom"), py::arg("pressure"));

    // empirical data
    py::class_<KinkReport>(m, "KinkReport")
        .def_readonly("has_kink", &KinkReport::has_kink)
        .def_readonly("eps_break", &KinkReport::eps_break)
        .def_readonly("slope_low", &KinkReport::slope_low)
        .def_readonly("slope_high", &KinkReport::slope_high)
        .def_readonly("sse_ratio", &KinkReport::sse_ratio);
    m.def("detect_kink", &detect_kink, py::arg("curve"));

    py::class_<Surrogate>(m, "Surrogate")
        .def_property_readonly("p_ref", &Surrogate::p_ref)
        .def_property_readonly("fr_min", &Surrogate::fr_min)
        .def_property_readonly("fr_max", &Surrogate::fr_max)
        .def("force", &Surrogate::force, py::arg("fr"), py::arg("strain"), py::arg("pressure"));
    m.def("build_surrogate", &build_surrogate,
          py::arg("fr_values"), py::arg("curves"), py::arg("p_ref"), py::arg("grid_points") = 512);

    // control simulation
    py::class_<SimTrace>(m, "SimTrace")
        .def_readonly("loop_rate", &SimTrace::loop_rate)
        .def_readonly("actuation_range", &SimTrace::actuation_range)
        .def_readonly("setpoint", &SimTrace::setpoint)
        .def("to_csv", &trace_to_csv)
        .def("rows", [](const SimTrace& t) {
            py::list rows;
            for (const auto& r : t.rows) {
                py::dict d;
                d["time_s"] = r.time;
                d["command"] = r.command;
                d["fold_ratio"] = r.fold_ratio;
                d["pressure_kpa"] = r.pressure / 1e3;
                d["position_mm"] = r.position * 1e3;
                d["load_n"] = r.load;
                d["error_mm"] = r.error * 1e3;
                rows.append(d);
            }
            return rows;
        });

    m.def("run_scenario", [](const std::string& name) { return run_scenario(builtin_scenario(name)); },
          py::arg("scenario"));
    m.def("run_scenario_json", [](const std::string& config_json) {
        std::istringstream in(config_json);
        return run_scenario(scenario_from_json(in));
    }, py::arg("config_json"));

    m.def("plot_curves_svg", &plot_curves_svg, py::arg("curves"));
    m.def("plot_trace_svg", &plot_trace_svg, py::arg("trace"));
}
