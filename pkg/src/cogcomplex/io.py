"""Scenario files, params files, trajectory CSV and run reports.

Scenario and params files are JSON documents carrying ``"schema": 1``.
Unknown keys are rejected so typos surface as errors instead of defaults.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

from .calibration import (
    Calibration,
    CalibrationTargets,
    RootFindConfig,
    equivalent_age,
    find_intersection,
    find_peak,
)
from .cognition import KNOWLEDGE_MODELS, CognitionParams
from .complexity import DEFAULT_H, DEFAULT_HORIZON, DoubleExponential, GrowthParams, LinearExponent
from .errors import ModelError, ParameterError, ParseError, ScenarioError
from .scenarios import Scenario, SuddenLoss, SustainedLoss, Trajectory, validate_scenario

SCHEMA_VERSION = 1
TOOL_VERSION = "cogcomplex 0.1.0"


def _load_json(path: str | Path) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ParseError("file not found", path=str(path)) from None
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read file: {exc}", path=str(path)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, path=str(path), line=exc.lineno, column=exc.colno) from None
    except RecursionError:
        raise ParseError("document nested too deeply", path=str(path)) from None
    except ValueError as exc:
        raise ParseError(str(exc), path=str(path)) from None


class _Fields:
    """Typed access to one JSON object, recording the field path for errors."""

    def __init__(self, obj: Any, where: str, path: str, allowed: set[str], required: set[str] = frozenset()):
        if not isinstance(obj, dict):
            raise ParseError("expected an object", path=path, field=where or "<root>")
        unknown = sorted(set(obj) - allowed)
        if unknown:
            raise ParseError(f"unknown key {unknown[0]!r}", path=path, field=self._join(where, unknown[0]))
        missing = sorted(required - set(obj))
        if missing:
            raise ParseError("required key missing", path=path, field=self._join(where, missing[0]))
        self.obj, self.where, self.path = obj, where, path

    @staticmethod
    def _join(where: str, key: str) -> str:
        if not key:
            return where
        return f"{where}.{key}" if where else key

    def fail(self, key: str, message: str) -> ParseError:
        return ParseError(message, path=self.path, field=self._join(self.where, key))

    def has(self, key: str) -> bool:
        return key in self.obj

    def number(self, key: str, default: float | None = None, *, low: float | None = None,
               high: float | None = None, open_low: bool = False, open_high: bool = False) -> float:
        if key not in self.obj:
            if default is None:
                raise self.fail(key, "required key missing")
            return default
        v = self.obj[key]
        try:
            ok = not isinstance(v, bool) and isinstance(v, (int, float)) and math.isfinite(float(v))
        except OverflowError:
            ok = False
        if not ok:
            raise self.fail(key, f"expected a finite number, got {v!r}")
        v = float(v)
        if low is not None and (v < low or (open_low and v == low)):
            raise self.fail(key, f"value {v!r} out of range")
        if high is not None and (v > high or (open_high and v == high)):
            raise self.fail(key, f"value {v!r} out of range")
        return v

    def text(self, key: str, default: str | None = None) -> str:
        if key not in self.obj:
            if default is None:
                raise self.fail(key, "required key missing")
            return default
        v = self.obj[key]
        if not isinstance(v, str):
            raise self.fail(key, f"expected a string, got {v!r}")
        return v

    def sub(self, key: str, allowed: set[str], required: set[str] = frozenset()) -> "_Fields":
        return _Fields(self.obj[key], self._join(self.where, key), self.path, allowed, required)


def _growth_from(f: _Fields) -> GrowthParams:
    return GrowthParams(f.number("n_max", low=0, open_low=True), f.number("b", low=0, open_low=True),
                        f.number("tau_g", low=0, open_low=True))


def _cognition_from(f: _Fields) -> CognitionParams:
    model = f.text("knowledge_model", "exponential")
    if model not in KNOWLEDGE_MODELS:
        raise f.fail("knowledge_model", f"unknown knowledge model {model!r}")
    return CognitionParams(
        k=f.number("k", low=0, open_low=True), lam=f.number("lam", low=0, open_low=True),
        E=f.number("E", 1.0, low=0, open_low=True), l=f.number("l", 0.0, low=0),
        K0=f.number("K0", 1.0, low=0, open_low=True), knowledge_model=model,
    )


_COGNITION_KEYS = {"k", "lam", "E", "l", "K0", "knowledge_model"}


def parse_scenario_file(path: str | Path, params: Calibration | None = None
                        ) -> tuple[Scenario, CognitionParams | None]:
    """Read a scenario file; ``params`` fills in growth, ``h`` and ``tau`` the file omits."""
    try:
        return _parse_scenario(str(path), params)
    except ParameterError as exc:
        raise ParseError(str(exc), path=str(path)) from None


def _check_schema(root: _Fields) -> None:
    v = root.obj["schema"]
    if isinstance(v, bool) or v != SCHEMA_VERSION:
        raise root.fail("schema", f"unsupported schema {v!r} (expected {SCHEMA_VERSION})")


def _parse_scenario(path: str, params: Calibration | None) -> tuple[Scenario, CognitionParams | None]:
    root = _Fields(_load_json(path), "", path, {"schema", "label", "horizon", "growth", "mode", "events", "cognition"},
                   {"schema", "mode"})
    _check_schema(root)
    label = root.text("label", "scenario")
    horizon = root.number("horizon", DEFAULT_HORIZON, low=0, open_low=True)

    if root.has("growth"):
        growth = _growth_from(root.sub("growth", {"n_max", "b", "tau_g"}, {"n_max", "b", "tau_g"}))
    elif params is not None:
        growth = params.growth
    else:
        raise root.fail("growth", "required key missing (or pass a params file)")

    mode_f = root.sub("mode", {"kind", "h", "tau"}, {"kind"})
    kind = mode_f.text("kind")
    default_h = params.h if params is not None else DEFAULT_H
    h = mode_f.number("h", default_h, low=0)
    if kind == "linear_exponent":
        if mode_f.has("tau"):
            raise mode_f.fail("tau", "linear_exponent mode takes no tau")
        mode = LinearExponent(h)
    elif kind == "double_exponential":
        tau_default = params.weakening_tau if params is not None else None
        mode = DoubleExponential(h, mode_f.number("tau", tau_default, low=0, open_low=True))
    else:
        raise mode_f.fail("kind", f"unknown mode kind {kind!r}")

    events = []
    raw_events = root.obj.get("events", [])
    if not isinstance(raw_events, list):
        raise root.fail("events", "expected a list")
    for i, raw in enumerate(raw_events):
        where = f"events[{i}]"
        ev_kind = _Fields(raw, where, path, {"kind", "month", "fraction", "start_month", "monthly_rate"}, {"kind"})
        kind_name = ev_kind.text("kind")
        if kind_name == "sudden_loss":
            ev = _Fields(raw, where, path, {"kind", "month", "fraction"}, {"kind", "month", "fraction"})
            events.append(SuddenLoss(ev.number("month", low=0),
                                     ev.number("fraction", low=0, high=1, open_low=True, open_high=True)))
        elif kind_name == "sustained_loss":
            ev = _Fields(raw, where, path, {"kind", "start_month", "monthly_rate"},
                         {"kind", "start_month", "monthly_rate"})
            events.append(SustainedLoss(ev.number("start_month", low=0),
                                        ev.number("monthly_rate", low=0, high=1, open_low=True, open_high=True)))
        else:
            raise ev_kind.fail("kind", f"unknown event kind {kind_name!r}")

    cognition = None
    if root.has("cognition"):
        cognition = _cognition_from(root.sub("cognition", _COGNITION_KEYS, {"k", "lam"}))

    scenario = Scenario(growth, mode, tuple(events), label, horizon)
    validate_scenario(scenario).raise_if_invalid()
    return scenario, cognition


def scenario_to_dict(scenario: Scenario, cognition: CognitionParams | None = None) -> dict[str, Any]:
    mode = scenario.mode
    mode_d: dict[str, Any] = {"kind": mode.kind, "h": mode.h}
    if isinstance(mode, DoubleExponential):
        mode_d["tau"] = mode.tau
    events = []
    for ev in scenario.events:
        if isinstance(ev, SuddenLoss):
            events.append({"kind": "sudden_loss", "month": ev.month, "fraction": ev.fraction})
        else:
            events.append({"kind": "sustained_loss", "start_month": ev.start_month,
                           "monthly_rate": ev.monthly_rate})
    out: dict[str, Any] = {
        "schema": SCHEMA_VERSION,
        "label": scenario.label,
        "horizon": scenario.horizon,
        "growth": asdict(scenario.growth),
        "mode": mode_d,
        "events": events,
    }
    if cognition is not None:
        out["cognition"] = asdict(cognition)
    return out


def write_scenario_file(scenario: Scenario, path: str | Path, cognition: CognitionParams | None = None) -> None:
    _write_json(scenario_to_dict(scenario, cognition), path)


def _write_json(obj: Any, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


# -- params file ----------------------------------------------------------------

def write_params_file(cal: Calibration, path: str | Path, cfg: RootFindConfig = RootFindConfig()) -> None:
    t = cal.targets
    _write_json({
        "schema": SCHEMA_VERSION,
        "kind": "params",
        "tool_version": TOOL_VERSION,
        "targets": {"peak_month": t.peak_month, "baseline_equiv": list(t.baseline_equiv),
                    "exp_weaken_equiv": list(t.exp_weaken_equiv),
                    "intersection_month": t.intersection_month, "horizon": t.horizon},
        "h": cal.h,
        "growth": asdict(cal.growth),
        "weakening_tau": cal.weakening_tau,
        "cognition": asdict(cal.cognition),
        "residuals": {k: float(v) for k, v in cal.residuals.items()},
        "iterations": dict(cal.iterations),
        "solver": asdict(cfg),
    }, path)


def read_params_file(path: str | Path) -> Calibration:
    path = str(path)
    root = _Fields(_load_json(path), "", path,
                   {"schema", "kind", "tool_version", "targets", "h", "growth", "weakening_tau", "cognition",
                    "residuals", "iterations", "solver"},
                   {"schema", "kind", "targets", "h", "growth", "weakening_tau", "cognition"})
    _check_schema(root)
    if root.obj["kind"] != "params":
        raise root.fail("kind", "not a schema-1 params file")
    tf = root.sub("targets", {"peak_month", "baseline_equiv", "exp_weaken_equiv", "intersection_month", "horizon"},
                  {"peak_month", "baseline_equiv", "exp_weaken_equiv", "intersection_month"})
    pairs = {}
    for key in ("baseline_equiv", "exp_weaken_equiv"):
        v = tf.obj[key]
        if not (isinstance(v, list) and len(v) == 2 and all(isinstance(x, (int, float)) for x in v)):
            raise tf.fail(key, "expected [query_month, equivalent_month]")
        pairs[key] = (float(v[0]), float(v[1]))
    try:
        targets = CalibrationTargets(tf.number("peak_month"), pairs["baseline_equiv"], pairs["exp_weaken_equiv"],
                                     tf.number("intersection_month"), tf.number("horizon", DEFAULT_HORIZON))
    except ModelError as exc:
        raise tf.fail("", str(exc)) from None
    try:
        return _params_from(root, targets)
    except ParameterError as exc:
        raise ParseError(str(exc), path=path) from None


def _params_from(root: _Fields, targets: CalibrationTargets) -> Calibration:
    residuals = root.obj.get("residuals", {})
    iterations = root.obj.get("iterations", {})
    return Calibration(
        targets=targets,
        h=root.number("h", low=0),
        growth=_growth_from(root.sub("growth", {"n_max", "b", "tau_g"}, {"n_max", "b", "tau_g"})),
        weakening_tau=root.number("weakening_tau", low=0, open_low=True),
        cognition=_cognition_from(root.sub("cognition", _COGNITION_KEYS, {"k", "lam"})),
        residuals={str(k): float(v) for k, v in residuals.items()} if isinstance(residuals, dict) else {},
        iterations={str(k): int(v) for k, v in iterations.items()} if isinstance(iterations, dict) else {},
    )


# -- trajectory CSV ----------------------------------------------------------------

def _fmt(x: float) -> str:
    return format(float(x), ".9g")


def write_trajectory_csv(trajectory: Trajectory, path: str | Path) -> None:
    header = ["month", "log2_complexity"]
    if trajectory.cognitive_depth is not None:
        header.append("cognitive_depth")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for i in range(len(trajectory)):
            row = [_fmt(trajectory.months[i]), _fmt(trajectory.log2_complexity[i])]
            if trajectory.cognitive_depth is not None:
                row.append(_fmt(trajectory.cognitive_depth[i]))
            writer.writerow(row)


def read_trajectory_csv(path: str | Path, label: str = "") -> Trajectory:
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0][:2] != ["month", "log2_complexity"]:
        raise ParseError("not a trajectory CSV", path=str(path))
    has_depth = len(rows[0]) == 3
    data = rows[1:]
    try:
        months = [float(r[0]) for r in data]
        values = [float(r[1]) for r in data]
        depth = [float(r[2]) for r in data] if has_depth else None
    except (ValueError, IndexError) as exc:
        raise ParseError(f"bad row: {exc}", path=str(path)) from None
    return Trajectory(months, values, depth, label)


# -- run report ----------------------------------------------------------------

@dataclass
class RunReport:
    scenario_label: str
    peak_month: float | None
    equivalent_ages: dict[str, float | None]
    intersection_month: float | None
    params_used: dict[str, Any]
    tool_version: str = TOOL_VERSION
    errors: dict[str, str] = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"


def build_report(scenario: Scenario, baseline: Scenario, query_months: list[float],
                 cognition: CognitionParams | None = None, cfg: RootFindConfig = RootFindConfig()) -> RunReport:
    """Peak, equivalent ages and (with cognition) intersection for one scenario.

    Failures of individual queries are recorded under ``errors`` rather than raised.
    """
    errors: dict[str, str] = {}
    try:
        peak: float | None = find_peak(scenario, cfg)
    except ModelError as exc:
        peak = None
        errors["peak_month"] = str(exc)
    ages: dict[str, float | None] = {}
    for q in query_months:
        key = _fmt(q)
        try:
            ages[key] = equivalent_age(scenario, q, baseline, cfg)
        except ModelError as exc:
            ages[key] = None
            errors[f"equivalent_age@{key}"] = str(exc)
    intersection = None
    if cognition is not None:
        try:
            intersection = find_intersection(cognition, scenario, cfg)
        except ModelError as exc:
            errors["intersection_month"] = str(exc)
    params_used = {
        "scenario": scenario_to_dict(scenario, cognition),
        "baseline": scenario_to_dict(baseline),
        "query_months": list(query_months),
        "solver": asdict(cfg),
    }
    return RunReport(scenario.label, peak, ages, intersection, params_used, errors=errors)


__all__ = [
    "ParseError", "RunReport", "ScenarioError", "build_report", "parse_scenario_file", "read_params_file",
    "read_trajectory_csv", "scenario_to_dict", "write_params_file", "write_scenario_file",
    "write_trajectory_csv",
]
