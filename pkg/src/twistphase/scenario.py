"""
Scenario configuration and deterministic CSV generation behind the CLI.

Every document produced here is comma-separated with a mandatory header,
LF line endings and numbers written with 17 significant digits
(``%.16e``), so identical inputs give byte-identical output.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Mapping

import numpy as np

from .errors import ConfigError
from .jones import rotation_matrix
from .media import MediumSpec, TwistMode, eigen_ray, eta_phi_generator, twist_independent
from .phases import LCP, RCP, ClosedForm, bilinear_phase, closed_form, closed_form_cos, conformance_report
from .propagation import propagate_varying

SWEEP_NAMES = ("eta", "k", "phi", "theta")
MODES = ("bilinear", "paper", "both")
PHASES = ("dynamical", "net", "geometric")

CONFIG_KEYS = frozenset(
    {"eta", "phi", "k", "theta", "twist_mode", "input", "phase", "mode", "sweep", "z", "step", "out"}
)

_PRINTED_KIND = {
    ("eigen", "dynamical"): ClosedForm.DYNAMICAL,
    ("eigen", "net"): ClosedForm.NET,
    ("eigen", "geometric"): ClosedForm.GEOMETRIC,
    ("lcp", "dynamical"): ClosedForm.DYNAMICAL_LCP,
    ("lcp", "net"): ClosedForm.NET_LCP,
    ("lcp", "geometric"): ClosedForm.GEOMETRIC_LCP,
    ("rcp", "dynamical"): ClosedForm.DYNAMICAL_RCP,
}


def grid_points(start: float, stop: float, count: int) -> np.ndarray:
    """Evenly spaced points; symmetric ranges hit 0.0 exactly at odd counts."""
    frac = np.arange(count) / (count - 1)
    return start + (stop - start) * frac


def fmt(x: float) -> str:
    # + 0.0 folds -0.0 into 0.0
    return f"{float(x) + 0.0:.16e}"


@dataclass(frozen=True)
class SweepAxis:
    name: str
    start: float
    stop: float
    count: int

    def values(self) -> np.ndarray:
        return grid_points(self.start, self.stop, self.count)

    @classmethod
    def parse(cls, spec) -> "SweepAxis":
        """Accept ``"name:start:stop:count"``, a 4-item list, or a mapping with those keys."""
        if isinstance(spec, str):
            parts = spec.split(":")
        elif isinstance(spec, Mapping):
            unknown = set(spec) - {"name", "start", "stop", "count"}
            if unknown:
                raise ConfigError(f"sweep: unknown key {sorted(unknown)[0]!r}")
            try:
                parts = [spec["name"], spec["start"], spec["stop"], spec["count"]]
            except KeyError as exc:
                raise ConfigError(f"sweep: missing key {exc.args[0]!r}") from None
        else:
            parts = list(spec)
        if len(parts) != 4:
            raise ConfigError(f"sweep: expected name:start:stop:count, got {spec!r}")
        name = str(parts[0])
        if name not in SWEEP_NAMES:
            raise ConfigError(f"sweep: parameter {name!r} not in {SWEEP_NAMES}")
        try:
            start, stop = float(parts[1]), float(parts[2])
            count_f = float(parts[3])
        except (TypeError, ValueError):
            raise ConfigError(f"sweep {name}: start/stop/count must be numeric, got {spec!r}") from None
        if not (math.isfinite(start) and math.isfinite(stop)):
            raise ConfigError(f"sweep {name}: range must be finite")
        if count_f != int(count_f) or int(count_f) < 2:
            raise ConfigError(f"sweep {name}: count must be an integer >= 2, got {parts[3]!r}")
        if start > stop:
            raise ConfigError(f"sweep {name}: start {start} exceeds stop {stop}")
        return cls(name, start, stop, int(count_f))


@dataclass(frozen=True)
class InputSelector:
    kind: str
    angle: float = 0.0
    custom: tuple[complex, complex] | None = None

    @classmethod
    def parse(cls, text: str) -> "InputSelector":
        text = str(text).strip()
        if text in ("eigen", "lcp", "rcp"):
            return cls(text)
        head, _, rest = text.partition(":")
        if head == "linear" and rest:
            try:
                return cls("linear", angle=float(rest))
            except ValueError:
                raise ConfigError(f"input: bad linear angle {rest!r}") from None
        if head == "custom" and rest:
            try:
                re1, im1, re2, im2 = (float(x) for x in rest.split(","))
            except ValueError:
                raise ConfigError(f"input: custom needs RE1,IM1,RE2,IM2, got {rest!r}") from None
            vec = (complex(re1, im1), complex(re2, im2))
            if not all(map(math.isfinite, (re1, im1, re2, im2))):
                raise ConfigError("input: custom components must be finite")
            if vec == (0, 0):
                raise ConfigError("input: custom vector must be nonzero")
            return cls("custom", custom=vec)
        raise ConfigError(f"input: expected eigen|lcp|rcp|linear:ANGLE|custom:RE1,IM1,RE2,IM2, got {text!r}")

    def state(self, phi: float) -> np.ndarray:
        if self.kind == "eigen":
            return eigen_ray(phi)
        if self.kind == "lcp":
            return LCP.copy()
        if self.kind == "rcp":
            return RCP.copy()
        if self.kind == "linear":
            return np.array([math.cos(self.angle), math.sin(self.angle)], dtype=complex)
        return np.array(self.custom, dtype=complex)


@dataclass(frozen=True)
class ScenarioConfig:
    eta: float = 1.0
    phi: float = 0.0
    k: float = 0.0
    theta: float = math.pi / 2
    twist_mode: TwistMode = TwistMode.THICKNESS_INDEPENDENT
    input: InputSelector = field(default_factory=lambda: InputSelector("eigen"))
    phase: str = "dynamical"
    mode: str = "both"
    sweep: tuple[SweepAxis, ...] = ()
    z: float = 1.0
    step: float = 1e-3
    out: str | None = None

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any], base: "ScenarioConfig | None" = None) -> "ScenarioConfig":
        """Overlay the keys of ``data`` on ``base`` (defaults when omitted), validating each."""
        cfg = base or cls()
        unknown = set(data) - CONFIG_KEYS
        if unknown:
            raise ConfigError(f"unknown config key {sorted(unknown)[0]!r}")
        updates: dict[str, Any] = {}
        for key in ("eta", "phi", "k", "theta", "z", "step"):
            if key in data:
                try:
                    v = float(data[key])
                except (TypeError, ValueError):
                    raise ConfigError(f"{key}: expected a number, got {data[key]!r}") from None
                if not math.isfinite(v):
                    raise ConfigError(f"{key}: must be finite")
                updates[key] = v
        if "twist_mode" in data:
            try:
                updates["twist_mode"] = TwistMode(data["twist_mode"])
            except ValueError:
                raise ConfigError(
                    f"twist_mode: expected one of {[m.value for m in TwistMode]}, got {data['twist_mode']!r}"
                ) from None
        if "input" in data:
            updates["input"] = InputSelector.parse(data["input"])
        for key, allowed in (("phase", PHASES), ("mode", MODES)):
            if key in data:
                if data[key] not in allowed:
                    raise ConfigError(f"{key}: expected one of {allowed}, got {data[key]!r}")
                updates[key] = data[key]
        if "sweep" in data:
            raw = data["sweep"]
            if not isinstance(raw, (list, tuple)):
                raise ConfigError("sweep: expected a list of axes")
            axes = tuple(SweepAxis.parse(s) for s in raw)
            names = [a.name for a in axes]
            if len(set(names)) != len(names):
                raise ConfigError(f"sweep: parameter swept twice in {names}")
            updates["sweep"] = axes
        if "out" in data:
            updates["out"] = None if data["out"] is None else str(data["out"])
        cfg = replace(cfg, **updates)
        if cfg.eta < 0.0:
            raise ConfigError(f"eta: must be non-negative, got {cfg.eta}")
        if any(a.name == "eta" and a.start < 0.0 for a in cfg.sweep):
            raise ConfigError("sweep eta: range must be non-negative")
        return cfg

    def medium(self) -> MediumSpec:
        return MediumSpec.from_eta_phi(self.eta, self.phi, self.k, self.twist_mode)

    def grid(self):
        """Yield parameter dicts in lexicographic sweep order."""
        fixed = {"eta": self.eta, "k": self.k, "phi": self.phi, "theta": self.theta}
        names = [a.name for a in self.sweep]
        for combo in itertools.product(*(a.values() for a in self.sweep)):
            point = dict(fixed)
            point.update(zip(names, map(float, combo)))
            yield point


def load_config(path) -> dict:
    """Read a flat JSON object from ``path``."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    if not isinstance(data, dict):
        raise ConfigError(f"config {path}: top level must be a JSON object")
    return data


def _write_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def scenario_phase(cfg: ScenarioConfig, eta: float, k: float, phi: float, theta: float) -> tuple[complex, complex | None]:
    """(bilinear, printed) value of the configured phase at one parameter point.

    ``printed`` is None when no closed form exists for the input/phase pair.
    """
    eps = cfg.input.state(phi)
    N0 = eta_phi_generator(eta, phi)
    dyn = bilinear_phase(eps, N0).value
    net = bilinear_phase(rotation_matrix(-theta) @ eps, twist_independent(N0, k)).value
    bil = {"dynamical": dyn, "net": net, "geometric": net - dyn}[cfg.phase]
    kind = _PRINTED_KIND.get((cfg.input.kind, cfg.phase))
    printed = None if kind is None else closed_form(kind, eta, phi, k, theta).value
    return bil, printed


def run_scenario(cfg: ScenarioConfig) -> str:
    """One row per sweep grid point: swept parameters, then the phase column(s)."""
    if cfg.mode != "bilinear" and (cfg.input.kind, cfg.phase) not in _PRINTED_KIND:
        raise ConfigError(
            f"mode {cfg.mode!r}: no printed closed form for input {cfg.input.kind!r} and phase {cfg.phase!r}"
        )
    names = [a.name for a in cfg.sweep]
    header = list(names)
    if cfg.mode in ("bilinear", "both"):
        header.append("phase_im_bilinear")
    if cfg.mode in ("paper", "both"):
        header.append("phase_im_paper")
    rows = []
    for point in cfg.grid():
        bil, printed = scenario_phase(cfg, point["eta"], point["k"], point["phi"], point["theta"])
        row = [fmt(point[n]) for n in names]
        if cfg.mode in ("bilinear", "both"):
            row.append(fmt(bil.imag))
        if cfg.mode in ("paper", "both"):
            row.append(fmt(printed.imag))
        rows.append(row)
    return _write_csv(header, rows)


@dataclass(frozen=True)
class FigureSpec:
    kind: ClosedForm
    axes: tuple[str, str] | tuple[str]
    column: str
    eta: float = 1.0
    phi: float = math.pi / 3


# eta and k span [0, 2], cos(phi) spans [-1, 1]; the unswept quantity sits at
# eta = 1 or phi = pi/3 so both the eta and the k terms contribute
FIGURES: dict[str, FigureSpec] = {
    "fig2": FigureSpec(ClosedForm.DYNAMICAL, ("eta",), "gamma_im"),
    "fig3": FigureSpec(ClosedForm.NET_NORMAL, ("eta", "k"), "net_phase_im"),
    "fig4": FigureSpec(ClosedForm.NET_NORMAL, ("k", "cos_phi"), "net_phase_im"),
    "fig5": FigureSpec(ClosedForm.GEOMETRIC_NORMAL, ("eta", "k"), "geometric_phase_im"),
    "fig6": FigureSpec(ClosedForm.GEOMETRIC_NORMAL, ("k", "cos_phi"), "geometric_phase_im"),
    "fig7": FigureSpec(ClosedForm.GEOMETRIC_AXIAL, ("k", "cos_phi"), "geometric_axial_im"),
    "fig8": FigureSpec(ClosedForm.GEOMETRIC_AXIAL, ("eta", "k"), "geometric_axial_im"),
}

_AXIS_RANGE = {"eta": (0.0, 2.0), "k": (0.0, 2.0), "cos_phi": (-1.0, 1.0)}


def figure_dataset(fig: str, n: int = 51) -> str:
    """Grid behind one phase figure, from the printed closed forms."""
    try:
        spec = FIGURES[fig]
    except KeyError:
        raise ConfigError(f"figure: unknown id {fig!r}; expected one of {sorted(FIGURES)}") from None
    grids = [grid_points(*_AXIS_RANGE[a], n) for a in spec.axes]
    rows = []
    for combo in itertools.product(*grids):
        point = {"eta": spec.eta, "k": 0.0, "cos_phi": math.cos(spec.phi)}
        point.update(zip(spec.axes, map(float, combo)))
        val = closed_form_cos(spec.kind, point["eta"], point["cos_phi"], point["k"])
        rows.append([fmt(point[a]) for a in spec.axes] + [fmt(val.phase_coefficient)])
    return _write_csv(list(spec.axes) + [spec.column], rows)


TRACE_HEADER = ["z", "e1_re", "e1_im", "e2_re", "e2_im", "s1", "s2", "s3", "s0"]


def trace_dataset(cfg: ScenarioConfig) -> str:
    """Propagation trace of the configured input through the configured medium."""
    medium = cfg.medium()
    trace = propagate_varying(medium.local_generator, cfg.input.state(cfg.phi), cfg.z, cfg.step)
    rows = []
    for s in trace.samples:
        e1, e2 = s.state
        s1, s2, s3 = s.stokes.s
        rows.append([fmt(x) for x in (s.z, e1.real, e1.imag, e2.real, e2.imag, s1, s2, s3, s.stokes.s0)])
    return _write_csv(TRACE_HEADER, rows)


CONFORMANCE_HEADER = ["eta", "k", "phi", "theta", "kind", "bilinear_im", "paper_im", "abs_diff", "flagged"]


def conformance_dataset(cfg: ScenarioConfig) -> str:
    """Bilinear versus printed value for every closed form over the sweep grid."""
    axes = {n: [getattr(cfg, n)] for n in SWEEP_NAMES}
    for a in cfg.sweep:
        axes[a.name] = list(a.values())
    rows = conformance_report(axes["eta"], axes["k"], axes["phi"], axes["theta"])
    out = [
        [fmt(r.eta), fmt(r.k), fmt(r.phi), fmt(r.theta), r.kind.value, fmt(r.bilinear.imag), fmt(r.printed.imag),
         fmt(r.difference), "1" if r.flagged else "0"]
        for r in rows
    ]
    return _write_csv(CONFORMANCE_HEADER, out)

