"""Braid letters, timed pi-pulse schedules and exact piecewise propagation.

Letters act on the dressed triple {|lambda_1>, |lambda_2>, |lambda_3>}.  An
over-crossing on pair (k, j) is exp(-i H_kj T) with Omega*T = pi, an
under-crossing exp(+i H_kj T).  Between pulses the background four-level
Hamiltonian runs; while any pulse is active the active pulse generators are
summed and the background is switched off.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import EtaOutOfRange, NotNormalized, OutOfRange
from .model import BASE_POINT, ControlParams, DressedFrame, dressed_frame, hamiltonian
from .numerics import hermitian_eig

OVER = "o"
UNDER = "u"
ORIENTATIONS = (OVER, UNDER)
VALID_PAIRS = ((1, 2), (2, 3), (1, 3))

NORM_TOL = 1e-12
_TIME_TOL = 1e-12


@dataclass(frozen=True)
class BraidLetter:
    pair: tuple[int, int]
    orientation: str = OVER
    phase: float = 0.0

    def __post_init__(self):
        k, j = (int(i) for i in self.pair)
        if k == j or k not in (1, 2, 3) or j not in (1, 2, 3):
            raise ValueError(f"braid pair must be two distinct indices from 1..3, got {self.pair}")
        object.__setattr__(self, "pair", (k, j))
        if self.orientation not in ORIENTATIONS:
            raise ValueError(f"orientation must be 'o' or 'u', got {self.orientation!r}")

    @property
    def sign(self) -> int:
        return 1 if self.orientation == OVER else -1

    @property
    def spectator(self) -> int:
        return ({1, 2, 3} - set(self.pair)).pop()

    def with_phase(self, phase: float) -> "BraidLetter":
        return BraidLetter(self.pair, self.orientation, phase)

    def reversed(self) -> "BraidLetter":
        return BraidLetter(self.pair, UNDER if self.orientation == OVER else OVER, self.phase)

    def __str__(self) -> str:
        return f"pi{self.pair[0]}{self.pair[1]}{self.orientation}"


def letter(spec: str, phase: float = 0.0) -> BraidLetter:
    """Parse a compact label such as ``"12o"`` or ``"pi23u"``."""
    s = spec.strip().lower().removeprefix("pi").replace(",", "").replace("_", "")
    if len(s) != 3:
        raise ValueError(f"cannot parse braid letter {spec!r}")
    return BraidLetter((int(s[0]), int(s[1])), s[2], phase)


@dataclass(frozen=True)
class PulseEvent:
    letter: BraidLetter
    start: float
    duration: float = math.pi
    rabi: float = 1.0

    def __post_init__(self):
        if not self.start >= 0.0:
            raise ValueError(f"pulse start {self.start} must be >= 0")
        if not self.duration > 0.0:
            raise ValueError(f"pulse duration {self.duration} must be > 0")
        if not self.rabi > 0.0:
            raise ValueError(f"pulse rabi {self.rabi} must be > 0")

    @property
    def end(self) -> float:
        return self.start + self.duration

    @property
    def area(self) -> float:
        return self.rabi * self.duration

    @property
    def is_ideal_pi(self) -> bool:
        return abs(self.area - math.pi) <= 1e-12

    def active(self, t: float) -> bool:
        return self.start <= t < self.end


@dataclass(frozen=True)
class Schedule:
    pulses: tuple[PulseEvent, ...]
    background: ControlParams = BASE_POINT
    total_time: float | None = None
    # extra generator added (once) whenever at least one pulse is active
    pulse_offset: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "pulses", tuple(self.pulses))
        last = max((p.end for p in self.pulses), default=0.0)
        if self.total_time is None:
            object.__setattr__(self, "total_time", last)
        elif self.total_time < last - _TIME_TOL:
            raise ValueError(f"total_time {self.total_time} ends before the last pulse ({last})")

    @property
    def frame(self) -> DressedFrame:
        return dressed_frame(self.background)

    def breakpoints(self) -> list[float]:
        pts = {0.0, float(self.total_time)}
        for p in self.pulses:
            pts.add(p.start)
            pts.add(min(p.end, self.total_time))
        return _dedupe(sorted(pts))


def sequential_schedule(
    letters: Sequence[BraidLetter],
    *,
    rabi: float = 1.0,
    duration: float = math.pi,
    lead: float = math.pi,
    gap: float = math.pi,
    tail: float = math.pi,
    background: ControlParams = BASE_POINT,
    pulse_offset=None,
) -> Schedule:
    """Non-overlapping pulses in time order, separated by background windows."""
    pulses = []
    t = lead
    for lt in letters:
        pulses.append(PulseEvent(lt, t, duration, rabi))
        t += duration + gap
    end = pulses[-1].end if pulses else lead
    return Schedule(tuple(pulses), background, end + tail, pulse_offset)


def two_pulse_schedule(
    first: BraidLetter,
    second: BraidLetter,
    t1: float,
    dt: float,
    *,
    rabi: float = 1.0,
    duration: float = math.pi,
    tail: float = math.pi,
    background: ControlParams = BASE_POINT,
) -> Schedule:
    """``first`` starts at t1 and ``second`` at t1 + dt (dt may be negative)."""
    t2 = t1 + dt
    if t1 < 0 or t2 < 0:
        raise OutOfRange(f"pulse starts ({t1}, {t2}) must be non-negative")
    pulses = (PulseEvent(first, t1, duration, rabi), PulseEvent(second, t2, duration, rabi))
    return Schedule(pulses, background, max(p.end for p in pulses) + tail)


def _dedupe(ts: list[float]) -> list[float]:
    out: list[float] = []
    for t in ts:
        if not out or t - out[-1] > _TIME_TOL:
            out.append(t)
    return out


def _outer(frame: DressedFrame, k: int, j: int) -> np.ndarray:
    return np.outer(frame.state(k), frame.state(j).conj())


def ideal_pi(lt: BraidLetter, frame: DressedFrame) -> np.ndarray:
    k, j = lt.pair
    l = lt.spectator
    e = np.exp(1j * lt.phase)
    swap = _outer(frame, k, j) * e + _outer(frame, j, k) * e.conjugate()
    return -1j * lt.sign * swap + _outer(frame, l, l) + _outer(frame, 4, 4)


def pulse_hamiltonian(lt: BraidLetter, rabi: float, frame: DressedFrame) -> np.ndarray:
    """(rabi/2)(|k><j| e^{i phi} + h.c.) in the bare basis; orientation is not applied."""
    k, j = lt.pair
    e = np.exp(1j * lt.phase)
    m = _outer(frame, k, j) * e
    return 0.5 * rabi * (m + m.conj().T)


def assemble_generator(s: Schedule, t: float) -> np.ndarray:
    if not -_TIME_TOL <= t <= s.total_time + _TIME_TOL:
        raise OutOfRange(f"t={t} outside [0, {s.total_time}]")
    active = [p for p in s.pulses if p.active(t)]
    if not active:
        return hamiltonian(s.background)
    frame = s.frame
    h = sum(p.letter.sign * pulse_hamiltonian(p.letter, p.rabi, frame) for p in active)
    if s.pulse_offset is not None:
        h = h + np.asarray(s.pulse_offset, dtype=complex)
    return h


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: list

    @property
    def final(self):
        return self.states[-1]


def check_pure(psi, tol: float = NORM_TOL) -> np.ndarray:
    v = np.asarray(psi, dtype=complex).reshape(-1)
    if abs(np.vdot(v, v).real - 1.0) > tol:
        raise NotNormalized(f"state norm^2 = {np.vdot(v, v).real}")
    return v


def check_density(rho, tol: float = NORM_TOL) -> np.ndarray:
    r = np.asarray(rho, dtype=complex)
    if abs(np.trace(r).real - 1.0) > tol:
        raise NotNormalized(f"trace = {np.trace(r).real}")
    if np.linalg.norm(r - r.conj().T) > tol:
        raise ValueError("density matrix is not Hermitian")
    if np.linalg.eigvalsh(r).min() < -tol:
        raise ValueError("density matrix is not positive semidefinite")
    return r


def _segments(s: Schedule, samples: int):
    """Yield (t_from, t_to, spectrum) over a grid that contains every breakpoint."""
    if samples < 2:
        raise ValueError("samples must be >= 2")
    out_times = np.linspace(0.0, s.total_time, samples)
    grid = _dedupe(sorted(set(out_times.tolist()) | set(s.breakpoints())))
    cache: dict[int, object] = {}
    bps = s.breakpoints()
    for a, b in zip(grid[:-1], grid[1:]):
        seg = int(np.searchsorted(bps, 0.5 * (a + b)))
        if seg not in cache:
            cache[seg] = hermitian_eig(assemble_generator(s, 0.5 * (a + b)))
        yield a, b, cache[seg]


def _step(spec, dt: float) -> np.ndarray:
    v = spec.eigenvectors
    return (v * np.exp(-1j * spec.eigenvalues * dt)) @ v.conj().T


def _run(s: Schedule, x0, samples: int, apply):
    out_times = np.linspace(0.0, s.total_time, samples)
    states = [x0]
    x = x0
    k = 1
    for a, b, spec in _segments(s, samples):
        x = apply(_step(spec, b - a), x)
        while k < samples and abs(out_times[k] - b) <= _TIME_TOL:
            states.append(x)
            k += 1
    while len(states) < samples:
        states.append(x)
    return Trajectory(out_times, states)


def propagate(s: Schedule, psi0, samples: int = 200) -> Trajectory:
    psi = check_pure(psi0)
    return _run(s, psi, samples, lambda u, x: u @ x)


def propagate_density(s: Schedule, rho0, samples: int = 200) -> Trajectory:
    rho = check_density(rho0)
    return _run(s, rho, samples, lambda u, x: u @ x @ u.conj().T)


def schedule_unitary(s: Schedule) -> np.ndarray:
    """Ordered product of the segment propagators over the whole schedule."""
    u = np.eye(4, dtype=complex)
    for a, b, spec in _segments(s, 2):
        u = _step(spec, b - a) @ u
    return u


def mixed_input(c, eta: float) -> np.ndarray:
    """Density matrix with populations |c_i|^2 and coherences scaled by eta."""
    if not 0.0 <= eta <= 1.0:
        raise EtaOutOfRange(f"eta={eta} must lie in [0, 1]")
    v = np.asarray(c, dtype=complex).reshape(-1)
    if abs(np.vdot(v, v).real - 1.0) > NORM_TOL:
        raise NotNormalized(f"sum |c_i|^2 = {np.vdot(v, v).real}")
    rho = eta * np.outer(v, v.conj())
    np.fill_diagonal(rho, np.abs(v) ** 2)
    return rho


def dressed_populations(state, frame: DressedFrame) -> np.ndarray:
    x = np.asarray(state, dtype=complex)
    v = frame.vectors
    if x.ndim == 1:
        return np.abs(v.conj().T @ x) ** 2
    return np.real(np.einsum("ia,ij,ja->a", v.conj(), x, v))


PSI0_DRESSED = np.sqrt([0.4, 0.3, 0.2, 0.1]).astype(complex)


def fig2_initial_state(frame: DressedFrame | None = None) -> np.ndarray:
    frame = frame or dressed_frame(BASE_POINT)
    return frame.to_bare(PSI0_DRESSED)
