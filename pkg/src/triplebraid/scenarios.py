"""Scenario runners and the named presets."""

from __future__ import annotations

import copy
import math

import numpy as np

from . import analysis, manybody, model, qutrit
from .analysis import BraidWord, SchedulePolicy
from .braiding import (
    BraidLetter,
    PulseEvent,
    Schedule,
    dressed_populations,
    propagate,
)
from .config import ScenarioConfig, ScanSpec, config_from_mapping
from .output import ResultTable

PI = math.pi

PRESETS = {
    "fig2a": {
        "scenario": "evolve",
        "pulses": [
            {"pair": "12", "orientation": "o", "phase": PI / 2, "start": PI},
            {"pair": "23", "orientation": "u", "phase": PI / 2, "start": 3 * PI},
        ],
        "total_time": 5 * PI,
    },
    "fig2b": {
        "scenario": "evolve",
        "pulses": [
            {"pair": "23", "orientation": "u", "phase": PI / 2, "start": PI},
            {"pair": "12", "orientation": "o", "phase": PI / 2, "start": 3 * PI},
        ],
        "total_time": 5 * PI,
    },
    "fig3a": {
        "scenario": "kscan",
        "scan": {"parameter": "dt", "from": -2 * PI, "to": 2 * PI, "samples": 201},
    },
    "fig4d": {
        "scenario": "phasescan",
        "words": list(analysis.FIG4_WORDS),
        "scan": {"parameter": "phi", "from": 0.0, "to": 2 * PI, "samples": 64},
    },
    "fig5": {
        "scenario": "etascan",
        "words": ["pi23u pi12o"],
        "eta": 1.0,
        "phase": 0.0,
        "policy": {"spacing": PI / 2, "phase_mask": [False, True]},
        "scan": {"parameter": "phi", "from": 0.0, "to": 2 * PI, "samples": 64},
    },
    "fig6": {
        "scenario": "breakprobe",
        "words": ["pi12u pi23u pi12o", "pi12o pi23u pi12o"],
        "omega_g": 1.0,
    },
}

DEFAULT_GRID = ScanSpec("grid", PI / 6, 5 * PI / 6, 9)


def preset_config(name: str, overrides: dict | None = None) -> ScenarioConfig:
    data = copy.deepcopy(PRESETS[name])
    data.update(overrides or {})
    return config_from_mapping(data)


def _samples(scan: ScanSpec | None, default: ScanSpec) -> np.ndarray:
    s = scan or default
    return np.linspace(s.start, s.stop, s.samples)


def _controls(cfg: ScenarioConfig) -> model.ControlParams:
    return model.ControlParams(**cfg.controls)


def _initial_bare(cfg: ScenarioConfig, frame) -> np.ndarray:
    amps = np.array(cfg.initial_state, dtype=complex)
    return frame.to_bare(amps) if cfg.initial_basis == "dressed" else amps


def _policy(cfg: ScenarioConfig, background, **defaults) -> SchedulePolicy:
    kw = dict(defaults)
    kw.update(cfg.policy)
    return SchedulePolicy(background=background, **kw)


def _words(cfg: ScenarioConfig, default) -> list[tuple[str, BraidWord]]:
    texts = cfg.words or list(default)
    return [(t, BraidWord.from_product(t, cfg.phase)) for t in texts]


def run_spectrum(cfg: ScenarioConfig) -> ResultTable:
    table = ResultTable(["theta", "alpha", "phi", "l1", "l2", "l3", "l4"])
    grid = _samples(cfg.scan, DEFAULT_GRID)
    base = _controls(cfg)
    for theta in grid:
        for alpha in grid:
            p = model.ControlParams(theta, alpha, base.phi, base.omega0)
            ev = np.linalg.eigvalsh(model.hamiltonian(p))
            table.append([theta, alpha, base.phi, *ev])
    return table


def run_evolve(cfg: ScenarioConfig) -> ResultTable:
    background = _controls(cfg)
    pulses = tuple(
        PulseEvent(BraidLetter(p.pair, p.orientation, p.phase), p.start, p.duration, p.rabi)
        for p in cfg.pulses
    )
    last = max((p.end for p in pulses), default=0.0)
    total = cfg.total_time if cfg.total_time is not None else last + PI
    s = Schedule(pulses, background, total)
    frame = s.frame
    traj = propagate(s, _initial_bare(cfg, frame), cfg.samples)
    table = ResultTable(["t", "P1", "P2", "P3", "P4"])
    for t, psi in zip(traj.times, traj.states):
        table.append([t, *dressed_populations(psi, frame)])
    return table


def run_kscan(cfg: ScenarioConfig) -> ResultTable:
    background = _controls(cfg)
    frame = model.dressed_frame(background)
    dts = _samples(cfg.scan, ScanSpec("dt", -2 * PI, 2 * PI, 201))
    if cfg.words:
        word = BraidWord.from_product(cfg.words[0], cfg.phase)
        if len(word) != 2:
            raise ValueError("kscan needs a two-letter word")
        first, second = word.letters
    else:
        first = BraidLetter((1, 2), "o", cfg.phase)
        second = BraidLetter((2, 3), "u", cfg.phase)
    ks = analysis.k_scan(
        dts, _initial_bare(cfg, frame), first, second, eps=cfg.tol, background=background
    )
    table = ResultTable(["dt", "K"])
    for dt, k in zip(dts, ks.continuous):
        table.append([dt, k])
    return table


def run_phasescan(cfg: ScenarioConfig) -> ResultTable:
    background = _controls(cfg)
    frame = model.dressed_frame(background)
    psi0 = _initial_bare(cfg, frame)
    phis = _samples(cfg.scan, ScanSpec("phi", 0.0, 2 * PI, 64))
    words = _words(cfg, analysis.FIG4_WORDS)
    policy = _policy(cfg, background)
    curves = [analysis.phase_scan(w, phis, psi0, policy).values for _, w in words]
    n = len(curves)
    cols = ["phi"] + [f"reF_w{i + 1}" for i in range(n)] + [f"imF_w{i + 1}" for i in range(n)]
    table = ResultTable(cols)
    for i, phi in enumerate(phis):
        table.append([phi] + [c[i].real for c in curves] + [c[i].imag for c in curves])
    return table


def run_etascan(cfg: ScenarioConfig) -> ResultTable:
    background = _controls(cfg)
    phis = _samples(cfg.scan, ScanSpec("phi", 0.0, 2 * PI, 64))
    (_, word), *_ = _words(cfg, PRESETS["fig5"]["words"])
    eta = 1.0 if cfg.eta is None else cfg.eta
    policy = _policy(cfg, background)
    curve, _ = analysis.coherence_scan(
        word, eta, phis, np.array(cfg.initial_state, dtype=complex), policy, cfg.initial_basis
    )
    table = ResultTable(["phi", "P1", "P2", "P3", "P4"])
    for phi, pops in zip(phis, curve.values):
        table.append([phi, *pops])
    return table


def run_breakprobe(cfg: ScenarioConfig) -> ResultTable:
    background = _controls(cfg)
    frame = model.dressed_frame(background)
    psi0 = _initial_bare(cfg, frame)
    omega_g = 1.0 if cfg.omega_g is None else cfg.omega_g
    policy = _policy(cfg, background)
    table = ResultTable(["word", "P1", "P2", "P3", "P4"])
    for text, word in _words(cfg, PRESETS["fig6"]["words"]):
        pops = analysis.breaking_probe(word, omega_g, psi0, policy)
        table.append(["_".join(text.split()), *pops])
    return table


def run_qutrit(cfg: ScenarioConfig) -> ResultTable:
    frame = model.base_frame()
    table = ResultTable(["gate", "phi3", "pattern_distance", "global_phase", "phase_sign"])
    x = qutrit.synth_x3(frame)
    table.append(["X3", 0.0, x.pattern_distance, x.global_phase, 0])
    phis = _samples(cfg.scan, ScanSpec("phi3", 0.0, PI / 2, 3))
    for phi3 in phis:
        z = qutrit.synth_z3(phi3, frame)
        table.append(["Z3", phi3, z.pattern_distance, z.global_phase, z.phase_sign or 0])
    return table


def run_manybody(cfg: ScenarioConfig) -> ResultTable:
    table = ResultTable(["coupling", "pair", "block_error", "leakage"])
    couplings = {"XX+YY": manybody.xx_plus_yy(1.0), "XX-YY": manybody.xx_minus_yy(1.0)}
    for name, terms in couplings.items():
        h = manybody.build_pauli_sum(terms, 2)
        for pair in (("01", "10"), ("00", "11")):
            r = manybody.realize_pi_via_hamiltonian(h, pair, PI)
            table.append([name, f"{pair[0]}-{pair[1]}", r.block_error, r.leakage])
    return table


def run_gauge(cfg: ScenarioConfig) -> ResultTable:
    base = _controls(cfg)
    grid = _samples(cfg.scan, ScanSpec("grid", PI / 6, 5 * PI / 6, 5))
    table = ResultTable(["theta", "alpha", "reF23_12", "imF23_12"])
    for theta in grid:
        for alpha in grid:
            p = model.ControlParams(theta, alpha, base.phi, base.omega0)
            f = model.gauge_field(p, (2, 3)).f_matrix
            table.append([theta, alpha, f[0, 1].real, f[0, 1].imag])
    return table


RUNNERS = {
    "spectrum": run_spectrum,
    "evolve": run_evolve,
    "kscan": run_kscan,
    "phasescan": run_phasescan,
    "etascan": run_etascan,
    "breakprobe": run_breakprobe,
    "qutrit": run_qutrit,
    "manybody": run_manybody,
    "gauge": run_gauge,
}


def run_scenario(cfg: ScenarioConfig) -> ResultTable:
    return RUNNERS[cfg.scenario](cfg)
