"""Scenario configuration: YAML text -> validated ScenarioConfig.

Keys (all optional except ``scenario``)::

    scenario: evolve            # spectrum|evolve|kscan|phasescan|etascan|breakprobe|qutrit|manybody|gauge
    controls: {theta: 1.5708, alpha: 1.5708, phi: 0.0, omega0: 1.0}
    initial_state: [[0.632, 0], [0.548, 0], [0.447, 0], [0.316, 0]]   # (re, im) pairs
    initial_basis: dressed      # dressed|bare; etascan defaults to bare
    pulses:                     # evolve only
      - {pair: "12", orientation: o, phase: 1.5708, start: 3.1416, duration: 3.1416, rabi: 1.0}
    words: ["pi12o pi23u pi12o"]   # operator-product notation, rightmost acts first
    scan: {parameter: phi, from: 0.0, to: 6.2832, samples: 64}
    policy: {spacing: 6.2832, duration: 3.1416, rabi: 1.0, phase_mask: [false, true]}
    eta: 1.0
    omega_g: 1.0
    total_time: 15.708
    samples: 200
    tol: 1.0e-6                 # population tie tolerance for K
    phase: 1.5708               # phase given to every letter of ``words``
    output: {path: out.csv, format: csv}
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import yaml

SCENARIOS = (
    "spectrum",
    "evolve",
    "kscan",
    "phasescan",
    "etascan",
    "breakprobe",
    "qutrit",
    "manybody",
    "gauge",
)
FORMATS = ("csv", "json")

PI = math.pi
PSI0 = [[math.sqrt(x), 0.0] for x in (0.4, 0.3, 0.2, 0.1)]

_TOP_KEYS = {
    "scenario",
    "controls",
    "initial_state",
    "initial_basis",
    "pulses",
    "words",
    "scan",
    "policy",
    "eta",
    "omega_g",
    "total_time",
    "samples",
    "tol",
    "phase",
    "output",
}


class ConfigError(Exception):
    exit_code = 2


class ParseError(ConfigError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


class ValidationError(ConfigError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


@dataclass
class PulseSpec:
    pair: tuple[int, int]
    orientation: str
    phase: float
    start: float
    duration: float
    rabi: float


@dataclass
class ScanSpec:
    parameter: str
    start: float
    stop: float
    samples: int


@dataclass
class ScenarioConfig:
    scenario: str
    controls: dict = field(default_factory=lambda: {"theta": PI / 2, "alpha": PI / 2, "phi": 0.0, "omega0": 1.0})
    initial_state: list = field(default_factory=lambda: [complex(*p) for p in PSI0])
    initial_basis: str = "dressed"
    pulses: list = field(default_factory=list)
    words: list = field(default_factory=list)
    scan: ScanSpec | None = None
    policy: dict = field(default_factory=dict)
    eta: float | None = None
    omega_g: float | None = None
    total_time: float | None = None
    samples: int = 200
    tol: float = 1e-6
    phase: float = PI / 2
    output_path: str | None = None
    output_format: str = "csv"


def _num(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(path, f"expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ValidationError(path, "must be finite")
    return float(value)


def _mapping(value: Any, path: str) -> dict:
    if not isinstance(value, dict):
        raise ValidationError(path, "expected a mapping")
    return value


def _list(value: Any, path: str) -> list:
    if not isinstance(value, list):
        raise ValidationError(path, "expected a list")
    return value


def _pair(value: Any, path: str) -> tuple[int, int]:
    if isinstance(value, (int, str)):
        s = str(value)
        if len(s) != 2 or not s.isdigit():
            raise ValidationError(path, f"cannot read pair {value!r}")
        pair = (int(s[0]), int(s[1]))
    else:
        items = _list(value, path)
        if len(items) != 2:
            raise ValidationError(path, "pair needs two indices")
        pair = (int(_num(items[0], path)), int(_num(items[1], path)))
    if pair[0] == pair[1] or not set(pair) <= {1, 2, 3}:
        raise ValidationError(path, f"pair must be two distinct indices from 1..3, got {pair}")
    return pair


def _controls(raw: dict, defaults: dict) -> dict:
    out = dict(defaults)
    for key, value in raw.items():
        path = f"controls.{key}"
        if key not in out:
            raise ValidationError(path, "unknown control; expected theta, alpha, phi, omega0")
        out[key] = _num(value, path)
    if not 0 < out["theta"] < PI:
        raise ValidationError("controls.theta", "must lie strictly inside (0, pi)")
    if not 0 <= out["alpha"] <= PI:
        raise ValidationError("controls.alpha", "must lie in [0, pi]")
    if out["omega0"] <= 0:
        raise ValidationError("controls.omega0", "must be positive")
    if math.sin(out["alpha"]) * math.sin(out["theta"]) == 0.0:
        raise ValidationError("controls.alpha", "sin(alpha)*sin(theta) must be nonzero")
    return out


def _state(raw: Any, path: str) -> list[complex]:
    items = _list(raw, path)
    if len(items) != 4:
        raise ValidationError(path, "needs exactly 4 amplitudes")
    amps = []
    for i, item in enumerate(items):
        p = f"{path}[{i}]"
        if isinstance(item, (int, float)) and not isinstance(item, bool):
            amps.append(complex(_num(item, p), 0.0))
            continue
        pair = _list(item, p)
        if len(pair) != 2:
            raise ValidationError(p, "expected a (re, im) pair")
        amps.append(complex(_num(pair[0], p + "[0]"), _num(pair[1], p + "[1]")))
    norm = sum(abs(a) ** 2 for a in amps)
    if abs(norm - 1.0) > 1e-9:
        raise ValidationError(path, f"amplitudes must be normalized (sum |a|^2 = {norm:.12g})")
    # absorb the admitted round-off so downstream 1e-12 checks hold
    return [a / math.sqrt(norm) for a in amps]


def _pulses(raw: Any) -> list[PulseSpec]:
    out = []
    for i, item in enumerate(_list(raw, "pulses")):
        path = f"pulses[{i}]"
        m = _mapping(item, path)
        unknown = set(m) - {"pair", "orientation", "phase", "start", "duration", "rabi"}
        if unknown:
            raise ValidationError(f"{path}.{sorted(unknown)[0]}", "unknown pulse key")
        if "pair" not in m or "start" not in m:
            raise ValidationError(path, "pulse needs at least pair and start")
        orientation = str(m.get("orientation", "o"))
        if orientation not in ("o", "u"):
            raise ValidationError(f"{path}.orientation", "must be 'o' or 'u'")
        spec = PulseSpec(
            pair=_pair(m["pair"], f"{path}.pair"),
            orientation=orientation,
            phase=_num(m.get("phase", 0.0), f"{path}.phase"),
            start=_num(m["start"], f"{path}.start"),
            duration=_num(m.get("duration", PI), f"{path}.duration"),
            rabi=_num(m.get("rabi", 1.0), f"{path}.rabi"),
        )
        if spec.start < 0:
            raise ValidationError(f"{path}.start", "must be >= 0")
        if spec.duration <= 0:
            raise ValidationError(f"{path}.duration", "must be > 0")
        if spec.rabi <= 0:
            raise ValidationError(f"{path}.rabi", "must be > 0")
        out.append(spec)
    return out


def _words(raw: Any) -> list[str]:
    from .analysis import BraidWord

    out = []
    for i, item in enumerate(_list(raw, "words")):
        path = f"words[{i}]"
        if not isinstance(item, str):
            raise ValidationError(path, "expected a word string such as 'pi12o pi23u'")
        try:
            BraidWord.from_product(item)
        except ValueError as exc:
            raise ValidationError(path, str(exc)) from exc
        out.append(item)
    return out


def _scan(raw: Any) -> ScanSpec:
    m = _mapping(raw, "scan")
    for key in ("from", "to", "samples"):
        if key not in m:
            raise ValidationError(f"scan.{key}", "missing")
    samples = m["samples"]
    if isinstance(samples, bool) or not isinstance(samples, int) or samples < 1:
        raise ValidationError("scan.samples", "must be a positive integer")
    spec = ScanSpec(
        parameter=str(m.get("parameter", "")),
        start=_num(m["from"], "scan.from"),
        stop=_num(m["to"], "scan.to"),
        samples=samples,
    )
    if samples > 1 and spec.stop <= spec.start:
        raise ValidationError("scan.to", "must exceed scan.from")
    return spec


def _policy(raw: Any) -> dict:
    m = _mapping(raw, "policy")
    out = {}
    for key, value in m.items():
        path = f"policy.{key}"
        if key in ("spacing", "duration", "rabi", "lead", "tail"):
            out[key] = _num(value, path)
            if key in ("duration", "rabi") and out[key] <= 0:
                raise ValidationError(path, "must be > 0")
            if key in ("lead", "tail") and out[key] < 0:
                raise ValidationError(path, "must be >= 0")
        elif key == "phase_mask":
            items = _list(value, path)
            if not all(isinstance(x, bool) for x in items):
                raise ValidationError(path, "expected a list of booleans")
            out[key] = tuple(items)
        else:
            raise ValidationError(path, "unknown policy key")
    return out


def config_from_mapping(data: Any) -> ScenarioConfig:
    m = _mapping(data, "<root>")
    unknown = set(m) - _TOP_KEYS
    if unknown:
        raise ValidationError(sorted(unknown)[0], "unknown key")
    scenario = m.get("scenario")
    if scenario not in SCENARIOS:
        raise ValidationError("scenario", f"{scenario!r} is not one of: {', '.join(SCENARIOS)}")
    cfg = ScenarioConfig(scenario=scenario)
    if scenario == "etascan":
        cfg.initial_basis = "bare"
    if "controls" in m:
        cfg.controls = _controls(_mapping(m["controls"], "controls"), cfg.controls)
    if "initial_state" in m:
        cfg.initial_state = _state(m["initial_state"], "initial_state")
    if "initial_basis" in m:
        if m["initial_basis"] not in ("dressed", "bare"):
            raise ValidationError("initial_basis", "must be 'dressed' or 'bare'")
        cfg.initial_basis = m["initial_basis"]
    if "pulses" in m:
        cfg.pulses = _pulses(m["pulses"])
    if "words" in m:
        cfg.words = _words(m["words"])
    if "scan" in m:
        cfg.scan = _scan(m["scan"])
    if "policy" in m:
        cfg.policy = _policy(m["policy"])
    if "eta" in m:
        cfg.eta = _num(m["eta"], "eta")
        if not 0 <= cfg.eta <= 1:
            raise ValidationError("eta", "must lie in [0, 1]")
    if "omega_g" in m:
        cfg.omega_g = _num(m["omega_g"], "omega_g")
        if cfg.omega_g < 0:
            raise ValidationError("omega_g", "must be >= 0")
    if "total_time" in m:
        cfg.total_time = _num(m["total_time"], "total_time")
        last = max((p.start + p.duration for p in cfg.pulses), default=0.0)
        if cfg.total_time < last:
            raise ValidationError("total_time", f"must cover the last pulse end ({last:.12g})")
    if "samples" in m:
        s = m["samples"]
        if isinstance(s, bool) or not isinstance(s, int) or s < 2:
            raise ValidationError("samples", "must be an integer >= 2")
        cfg.samples = s
    if "tol" in m:
        cfg.tol = _num(m["tol"], "tol")
        if cfg.tol <= 0:
            raise ValidationError("tol", "must be > 0")
    if "phase" in m:
        cfg.phase = _num(m["phase"], "phase")
    if "output" in m:
        out = _mapping(m["output"], "output")
        if "format" in out:
            if out["format"] not in FORMATS:
                raise ValidationError("output.format", f"must be one of {FORMATS}")
            cfg.output_format = out["format"]
        if "path" in out:
            cfg.output_path = str(out["path"])
    return cfg


def parse_config(text: str) -> ScenarioConfig:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        line = mark.line + 1 if mark is not None else None
        problem = getattr(exc, "problem", None) or str(exc)
        raise ParseError(problem, line) from exc
    if data is None:
        raise ParseError("empty configuration")
    return config_from_mapping(data)
