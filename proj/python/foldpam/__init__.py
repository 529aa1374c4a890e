"""foldPAM actuator models, design-space analysis and control simulation.

Thin Python facade over the compiled ``_foldpam`` core.
"""

try:  # installed wheel: the extension lives inside the package
    from . import _foldpam as _core
except ImportError:  # build tree: the extension sits next to the package on sys.path
    import _foldpam as _core

__all__ = [
    "DomainError",
    "ForceStrainCurve",
    "Geometry",
    "KinkReport",
    "ModelKind",
    "ParseError",
    "SimTrace",
    "SolveError",
    "Surrogate",
    "build_surrogate",
    "curve_family",
    "design_space_area",
    "detect_kink",
    "ellip_e",
    "ellip_f",
    "find_root_bracketed",
    "normalized_area",
    "plot_curves_svg",
    "plot_trace_svg",
    "pouch_force_at_strain",
    "pouch_max_strain",
    "pouch_point",
    "pouch_volume",
    "ppam_force_at_strain",
    "ppam_max_strain",
    "ppam_solve",
    "run_scenario",
    "run_scenario_json",
    "sample_curve",
    "wf_circ",
]

for _name in __all__:
    globals()[_name] = getattr(_core, _name)
del _name

__version__ = "0.1.0"
