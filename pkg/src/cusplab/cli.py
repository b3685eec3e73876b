"""Command-line scenario runner.

Each scenario builds the curves of one problem, classifies its
singularity where that makes sense, and writes ``<scenario>/curves.json``
and ``<scenario>/report.json`` (plus optional CSV mirrors) under the
output root.  Parameters come from command-line flags, then a JSON config
file, then built-in defaults, in that order of precedence.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import born_infeld, eikonal, hele_shaw, porous_medium, potential_flow, viscous_flow
from .curves import CurveError, CurveFamily, ParametricCurve, find_tips
from .normal_forms import FitError, SingularityReport, classify

# parameter choices for which the problem has no singularity to compute
INPUT_ERRORS = (
    eikonal.NoFocusingError,
    eikonal.DegenerateFocusingError,
    hele_shaw.NotUnivalentError,
    hele_shaw.NoCuspError,
    born_infeld.GraphConditionError,
)

SCENARIOS = ("eikonal", "hele-shaw", "hopkinson", "craya", "porous", "viscous", "born-infeld", "classify")
FORMATS = ("json", "csv")
DEFAULT_OUTPUT = "cusplab_output"
SAMPLES = 4096
SLICES = 8

DEFAULTS = {
    "eikonal": {"a1": 1.0, "a2": 0.0, "t_list": "auto", "x0_range": [-0.02, 0.02], "samples": SAMPLES},
    "hele-shaw": {"a1": 1.0, "a2": 0.0625, "t_list": "auto", "theta_halfwidth": 0.2, "theta_samples": SAMPLES},
    "hopkinson": {"m": 1.0, "m_sweep": None, "find_critical_m": False, "samples": SAMPLES},
    "craya": {"samples": 2001, "theta_max": 0.3},
    "porous": {"A": 1.0, "sigma_max": 0.0, "samples": SAMPLES},
    "viscous": {"ca": 0.3, "ca_sweep": None, "theta_samples": SAMPLES},
    "born-infeld": {"f_coeffs": None, "g_coeffs": None, "lambda": 1.0, "t_list": "auto",
                    "phi_range": [-0.4, 0.4], "t_stop": 10.0, "samples": SAMPLES},
    "classify": {"input": None, "window": None},
}

# t' values for "auto": the critical curve plus SLICES - 1 geometric steps
AUTO_TPRIMES = {
    "eikonal": (1e-4, 1e-2),
    "hele-shaw": (1e-8, 1e-5),
    "born-infeld": (1e-4, 1e-2),
}


class ConfigError(ValueError):
    """Invalid scenario, parameter, input file or output location."""


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: str
    parameters: dict
    output: str = DEFAULT_OUTPUT
    formats: tuple = ("json",)

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise ConfigError(f"unknown scenario {self.scenario!r}")
        bad = set(self.formats) - set(FORMATS)
        if bad:
            raise ConfigError(f"unknown formats {sorted(bad)}")
        unknown = set(self.parameters) - set(DEFAULTS[self.scenario])
        if unknown:
            raise ConfigError(f"unknown parameters for {self.scenario}: {sorted(unknown)}")


@dataclass
class RunReport:
    scenario: str
    inputs: dict
    files: list = field(default_factory=list)
    singularity: Optional[dict] = None
    wall_time: float = 0.0


# -- parameter parsing ---------------------------------------------------------------


def _floats(value, name: str) -> list:
    if isinstance(value, str):
        value = [v for v in value.replace(" ", "").split(",") if v]
    try:
        out = [float(v) for v in value]
    except (TypeError, ValueError):
        raise ConfigError(f"{name} must be a list of numbers") from None
    if not all(map(math.isfinite, out)):
        raise ConfigError(f"{name} must be finite")
    return out


def _tprimes(value, scenario: str) -> list:
    if value == "auto":
        lo, hi = AUTO_TPRIMES[scenario]
        return [0.0] + np.geomspace(lo, hi, SLICES - 1).tolist()
    tp = _floats(value, "t_list")
    if not tp or min(tp) < 0:
        raise ConfigError("t_list holds times before the singularity and must be non-negative")
    return sorted(set(tp))


def _pair(value, name: str) -> tuple:
    v = _floats(value, name)
    if len(v) != 2 or not v[0] < v[1]:
        raise ConfigError(f"{name} must be an increasing pair lo,hi")
    return v[0], v[1]


def _number(params: dict, key: str, kind=float):
    try:
        return kind(params[key])
    except (TypeError, ValueError):
        raise ConfigError(f"{key} must be a number") from None


def _count(params: dict, key: str, minimum: int = 8) -> int:
    n = _number(params, key, int)
    if n < minimum:
        raise ConfigError(f"{key} must be at least {minimum}")
    return n


# -- scenarios -------------------------------------------------------------------


def _report_dict(rep: SingularityReport) -> dict:
    return rep.to_dict()


def _run_eikonal(p: dict):
    front = eikonal.InitialFront(_number(p, "a1"), _number(p, "a2"))
    lo, hi = _pair(p["x0_range"], "x0_range")
    x0s = np.linspace(lo, hi, _count(p, "samples"))
    ev = eikonal.first_singularity(front)
    family = eikonal.front_family(front, _tprimes(p["t_list"], "eikonal"), x0s)
    rep = classify(family)
    delta = 1e-4
    grid = np.arange(-0.2, 0.2 + delta / 2, delta)
    slices = CurveFamily(
        tuple(eikonal.propagate_front(front, ev.t0 / 2 + k * delta, grid) for k in (-1, 0, 1)),
        label_name="t")
    report = {
        "focusing": {"t0": ev.t0, "x0": ev.x0, "a": ev.a, "location": list(ev.location)},
        "pde_residual": {"delta": delta, "residual": eikonal.eikonal_residual(slices)},
    }
    return family, report, rep


def _run_hele_shaw(p: dict):
    a1, a2 = _number(p, "a1"), _number(p, "a2")
    pred = hele_shaw.predict_cusp(a1, a2)
    hw = _number(p, "theta_halfwidth")
    if not 0 < hw <= math.pi:
        raise ConfigError("theta_halfwidth must lie in (0, pi]")
    theta_c = math.pi if pred.a2_crit > 0 else 0.0
    thetas = np.linspace(theta_c - hw, theta_c + hw, _count(p, "theta_samples"))
    family = hele_shaw.boundary_family(a1, a2, _tprimes(p["t_list"], "hele-shaw"), thetas)
    rep = classify(family)
    traj = hele_shaw.integrate_map(a1, a2, 0.9 * pred.t0, dt=1e-3)
    drift, slope = hele_shaw.suction_invariants(traj)
    A, B = hele_shaw.invariants(a1, a2)
    report = {
        "prediction": {"t0": pred.t0, "location": list(pred.location),
                       "a1_crit": pred.a1_crit, "a2_crit": pred.a2_crit},
        "blowup_time": hele_shaw.blowup_time(a1, a2),
        "invariants": {"A": A, "B": B, "B_drift": drift, "area_slope": slope},
    }
    return family, report, rep


def _hopkinson_arc(m: float, samples: int):
    """Arc around the singular point of the drop and the window for its fit."""
    drop = potential_flow.HopkinsonDrop(m)
    if m >= 0.9:
        zetas = np.linspace(-0.04, 0.04, samples)
        window = None
    else:
        g = drop.gamma_m
        zetas = np.linspace(g - 0.05, g + 0.05, samples)
        window = 0.005
    vt = potential_flow.vartheta_of(zetas)
    return ParametricCurve(vt, drop.point(vt), m, func=drop.point), window


def _run_hopkinson(p: dict):
    m = _number(p, "m")
    if not 0 <= m <= 1:
        raise ConfigError("m must lie in [0, 1]")
    samples = _count(p, "samples")
    ms = [m] if p["m_sweep"] is None else _floats(p["m_sweep"], "m_sweep")
    if any(not 0 <= v <= 1 for v in ms):
        raise ConfigError("m_sweep values must lie in [0, 1]")
    curves, sweep = [], []
    for v in ms:
        shape = potential_flow.drop_shape(v, samples)
        curves.append(shape)
        tips = find_tips(shape)
        sweep.append({
            "m": v,
            "apex_height": float(potential_flow.HopkinsonDrop(v).point(0.0)[0, 1]),
            "gamma_m": potential_flow.HopkinsonDrop(v).gamma_m,
            "self_intersection": potential_flow.has_self_intersection(v),
            "tip_zetas": sorted(float(potential_flow.zeta_of(t.sigma)) for t in tips),
        })
    arc, window = _hopkinson_arc(m, samples)
    rep = classify(arc, window=window)
    report = {"drops": sweep}
    if p["find_critical_m"]:
        report["critical_m"] = potential_flow.critical_m()
    family = CurveFamily(tuple(curves), label_name="m")
    return family, report, rep


def _run_craya(p: dict):
    samples = _count(p, "samples", 5)
    shape = potential_flow.craya_shape(samples)
    arc = potential_flow.craya_shape(401, theta_max=_number(p, "theta_max")).curve
    rep = classify(arc)
    th = arc.params
    near = (np.abs(th) > 0) & (np.abs(th) <= 0.02)
    c = 3 ** (2 / 3)
    report = {
        "local_coefficients": {
            "x_theta3": float(np.mean(arc.x[near] / th[near] ** 3)),
            "y_theta2": float(np.mean(arc.y[near] / th[near] ** 2)),
            "x_theta3_expected": -c / 36,
            "y_theta2_expected": -c / 12,
        },
    }
    return CurveFamily((shape.curve,), label_name="none"), report, rep


def _run_porous(p: dict):
    A, smax = _number(p, "A"), _number(p, "sigma_max")
    try:
        local = porous_medium.PorousCuspLocal(A, smax)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    n = _count(p, "samples")
    curve = porous_medium.local_cusp_shape(local.A, np.linspace(-1.0, local.sigma_max, n // 2))
    rep = classify(curve)
    nf = porous_medium.normal_form(A)
    report = {"normal_form": {"kind": nf.kind, "epsilon": nf.epsilon, "a": nf.a}}
    return CurveFamily((curve,), label_name="none"), report, rep


def _run_viscous(p: dict):
    n = _count(p, "theta_samples")
    cas = [_number(p, "ca")] if p["ca_sweep"] is None else _floats(p["ca_sweep"], "ca_sweep")
    if any(c <= 0 for c in cas):
        raise ConfigError("capillary numbers must be positive")
    thetas = np.linspace(-math.pi / 2 + 0.2, 1.5 * math.pi - 0.2, n)
    curves, sols = [], []
    for ca in cas:
        sol = viscous_flow.a_from_Ca(ca)
        curves.append(viscous_flow.surface_shape(sol.a, thetas, label=ca))
        sols.append({**asdict(sol), "residual": viscous_flow.a_equation_residual(sol),
                     "tip_radius": viscous_flow.tip_radius_exact(sol.epsilon)})
    report = {"solutions": sols}
    if len(cas) >= 2:
        law = viscous_flow.tip_radius(cas)
        eps_slope, eps_pref = viscous_flow.epsilon_law(cas)
        report["radius_law"] = {"rate": law.rate, "prefactor": law.prefactor,
                                "reference_rate": law.reference_rate,
                                "epsilon_rate": eps_slope, "epsilon_prefactor": eps_pref}
    crit = viscous_flow.surface_shape(-1 / 3, np.linspace(math.pi / 2 - 0.3, math.pi / 2 + 0.3, 801), label=0.0)
    rep = classify(crit)
    return CurveFamily(tuple(curves), label_name="Ca"), report, rep


def _run_born_infeld(p: dict):
    lam = _number(p, "lambda")
    if not lam > 0:
        raise ConfigError("lambda must be positive")
    f = p["f_coeffs"]
    try:
        if f is None:
            data = born_infeld.HoppeData.from_expansion(1.0, 0.5, 0.5, lam)
        else:
            g = None if p["g_coeffs"] is None else _floats(p["g_coeffs"], "g_coeffs")
            data = born_infeld.HoppeData(_floats(f, "f_coeffs"), g, lam)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    lo, hi = _pair(p["phi_range"], "phi_range")
    t0, phi0 = born_infeld.blowup_time(data, 0.0, _number(p, "t_stop"), (lo, hi))
    phis = np.linspace(lo, hi, _count(p, "samples"))
    tps = _tprimes(p["t_list"], "born-infeld")
    curves = tuple(born_infeld.hoppe_curve(data, t0 - tp, phis, label=tp).curve for tp in tps)
    family = CurveFamily(curves, critical_value=t0, label_name="tprime")
    rep = classify(family)
    report = {"blowup": {"t0": t0, "phi0": phi0},
              "data": {"f_coeffs": list(data.f_coeffs), "g_coeffs": list(data.g_coeffs),
                       "lambda": data.lam, "symmetric": data.symmetric}}
    return family, report, rep


def classify_file(path, window: Optional[float] = None) -> SingularityReport:
    """Classify the curve family stored as JSON at ``path``.

    A single curve object is accepted as well; without labelled
    pre-singular curves only the kind and tip exponent are reported.
    """
    try:
        raw = json.loads(Path(path).read_text())
        if "curves" in raw:
            family = CurveFamily.from_dict(raw)
        else:
            family = CurveFamily((ParametricCurve.from_dict(raw),))
    except (OSError, json.JSONDecodeError, CurveError, TypeError, ValueError) as exc:
        raise ConfigError(f"cannot read a curve family from {path}: {exc}") from None
    return classify(family, window=window)


def _run_classify(p: dict):
    if p["input"] is None:
        raise ConfigError("classify needs --input")
    window = None if p["window"] is None else _number(p, "window")
    rep = classify_file(p["input"], window)
    return None, {"input": str(p["input"])}, rep


RUNNERS = {
    "eikonal": _run_eikonal,
    "hele-shaw": _run_hele_shaw,
    "hopkinson": _run_hopkinson,
    "craya": _run_craya,
    "porous": _run_porous,
    "viscous": _run_viscous,
    "born-infeld": _run_born_infeld,
    "classify": _run_classify,
}


# -- output ------------------------------------------------------------------------


def _jsonable(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (tuple, set)):
        return list(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, default=_jsonable, allow_nan=False) + "\n"


def _clean(obj):
    """Replace non-finite floats by None so the JSON stays standard."""
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (float, np.floating)) and not math.isfinite(obj):
        return None
    return obj


def run_scenario(config: ScenarioConfig) -> RunReport:
    """Run one scenario and write its files; see the module docstring for the layout."""
    start = time.perf_counter()
    params = {**DEFAULTS[config.scenario], **config.parameters}
    family, report, rep = RUNNERS[config.scenario](params)
    outdir = Path(config.output) / config.scenario
    try:
        outdir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create output directory {outdir}: {exc}") from None
    files = []
    if family is not None:
        path = outdir / "curves.json"
        path.write_text(_dump(_clean(family.to_dict())))
        files.append(str(path))
        if "csv" in config.formats:
            for i, c in enumerate(family.curves):
                path = outdir / f"curve_{i:03d}.csv"
                path.write_text(c.to_csv())
                files.append(str(path))
    singular = None if rep is None else _report_dict(rep)
    body = {"scenario": config.scenario, "inputs": params, **report, "singularity": singular}
    rpath = outdir / "report.json"
    files.append(str(rpath))
    body["files"] = [Path(f).name for f in files]
    rpath.write_text(_dump(_clean(body)))
    return RunReport(config.scenario, params, files, singular, time.perf_counter() - start)


# -- argument parsing ------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file of parameters (flags take precedence)")
    common.add_argument("--output", help=f"output root (default $CUSPLAB_OUTPUT or {DEFAULT_OUTPUT})")
    common.add_argument("--csv", action="store_true", default=None, help="also write CSV mirrors of the curves")

    parser = argparse.ArgumentParser(prog="cusplab", description="Cusp and swallowtail scenarios.")
    sub = parser.add_subparsers(dest="scenario", required=True)

    s = sub.add_parser("eikonal", parents=[common], help="wavefront from an even polynomial")
    s.add_argument("--a1", type=float)
    s.add_argument("--a2", type=float)
    s.add_argument("--t-list", help="times before focusing, comma separated, or 'auto'")
    s.add_argument("--x0-range", help="lo,hi of the launch abscissa")
    s.add_argument("--samples", type=int)

    s = sub.add_parser("hele-shaw", parents=[common], help="suction with a quadratic map")
    s.add_argument("--a1", type=float)
    s.add_argument("--a2", type=float)
    s.add_argument("--t-list", help="times before the cusp, comma separated, or 'auto'")
    s.add_argument("--theta-halfwidth", type=float, help="half-width of the boundary arc around the cusp")
    s.add_argument("--theta-samples", type=int)

    s = sub.add_parser("hopkinson", parents=[common], help="drop driven by a dipole and a vortex")
    s.add_argument("--m", type=float)
    s.add_argument("--m-sweep", help="comma separated vortex strengths")
    s.add_argument("--find-critical-m", action="store_true", default=None)
    s.add_argument("--samples", type=int)

    s = sub.add_parser("craya", parents=[common], help="draining flow over a ridge")
    s.add_argument("--samples", type=int)
    s.add_argument("--theta-max", type=float, help="half-width of the arc used for classification")

    s = sub.add_parser("porous", parents=[common], help="interface tip in a porous medium")
    s.add_argument("--A", dest="A", type=float)
    s.add_argument("--sigma-max", type=float)
    s.add_argument("--samples", type=int)

    s = sub.add_parser("viscous", parents=[common], help="Stokes flow over a vortex dipole")
    s.add_argument("--ca", type=float)
    s.add_argument("--ca-sweep", help="comma separated capillary numbers")
    s.add_argument("--theta-samples", type=int)

    s = sub.add_parser("born-infeld", parents=[common], help="Born-Infeld graph solutions")
    s.add_argument("--f-coeffs", help="ascending coefficients of f, comma separated")
    s.add_argument("--g-coeffs", help="ascending coefficients of g (default g(s) = -f(-s))")
    s.add_argument("--lambda", dest="lambda", type=float)
    s.add_argument("--t-list", help="times before the singularity, comma separated, or 'auto'")
    s.add_argument("--phi-range", help="lo,hi of the curve parameter")
    s.add_argument("--t-stop", type=float, help="end of the search for the singular time")
    s.add_argument("--samples", type=int)

    s = sub.add_parser("classify", parents=[common], help="classify a stored curve family")
    s.add_argument("--input", help="curves.json to classify")
    s.add_argument("--window", type=float, help="fit-window radius in curve units")
    return parser


def config_from_args(argv=None, environ=None) -> ScenarioConfig:
    """Merge flags, config file and defaults into a validated configuration."""
    environ = os.environ if environ is None else environ
    args = vars(_parser().parse_args(argv))
    scenario = args.pop("scenario")
    cfg_path, output, csv_flag = args.pop("config"), args.pop("output"), args.pop("csv")
    file_cfg = {}
    if cfg_path is not None:
        try:
            file_cfg = json.loads(Path(cfg_path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {cfg_path}: {exc}") from None
        if not isinstance(file_cfg, dict):
            raise ConfigError("config file must hold a JSON object")
        file_cfg = {k.replace("-", "_"): v for k, v in file_cfg.items()}
    formats = file_cfg.pop("formats", ["json"])
    if csv_flag:
        formats = ["json", "csv"]
    file_out = file_cfg.pop("output", None)
    output = output or file_out or environ.get("CUSPLAB_OUTPUT") or DEFAULT_OUTPUT
    file_cfg.pop("scenario", None)
    params = {**file_cfg, **{k: v for k, v in args.items() if v is not None}}
    return ScenarioConfig(scenario, params, output, tuple(formats))


def main(argv=None) -> int:
    try:
        config = config_from_args(argv)
        result = run_scenario(config)
    except (ConfigError, *INPUT_ERRORS) as exc:
        print(json.dumps({"error": "config", "type": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return 2
    except (FitError, CurveError, ArithmeticError, ValueError, RuntimeError) as exc:
        print(json.dumps({"error": "numerical", "type": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return 3
    summary = {"scenario": result.scenario, "files": result.files, "wall_time": round(result.wall_time, 3)}
    if result.singularity is not None:
        summary["kind"] = result.singularity["kind"]
        summary["gamma"] = result.singularity["gamma"]
    print(json.dumps(summary))
    return 0


if __name__ == "__main__":
    sys.exit(main())
