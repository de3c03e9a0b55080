"""Classification diagnostics for braid words acting on the dressed triple.

Population ranking and the permutation index K, crossing writhe, the
phase-variation overlap F(phi), purity-dependent phase response, and the
breaking-dynamics probe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .braiding import (
    OVER,
    UNDER,
    BraidLetter,
    PulseEvent,
    Schedule,
    dressed_populations,
    letter,
    mixed_input,
    schedule_unitary,
    two_pulse_schedule,
)
from .errors import NotAPermutation, TiedPopulations, UnsupportedPair
from .model import BASE_POINT, ControlParams

TIE_TOL = 1e-6

DISCRETE = "discrete"
CONTINUOUS = "continuous"


@dataclass(frozen=True)
class BraidWord:
    """Letters in time order: ``letters[0]`` is applied first."""

    letters: tuple[BraidLetter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))

    @classmethod
    def parse(cls, text: str, phase: float = 0.0) -> "BraidWord":
        """Time-ordered labels, e.g. ``"12o 23u"`` applies pi_12,o first."""
        return cls(tuple(letter(tok, phase) for tok in text.replace("->", " ").split()))

    @classmethod
    def from_product(cls, text: str, phase: float = 0.0) -> "BraidWord":
        """Operator-product notation, rightmost factor acts first.

        ``from_product("pi23u pi12o")`` is the same word as ``parse("12o 23u")``.
        """
        return cls(tuple(reversed(cls.parse(text, phase).letters)))

    def __add__(self, other: "BraidWord") -> "BraidWord":
        return BraidWord(self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def reversed_orientation(self) -> "BraidWord":
        return BraidWord(tuple(lt.reversed() for lt in self.letters))

    def product_label(self) -> str:
        return " ".join(str(lt) for lt in reversed(self.letters))


@dataclass(frozen=True)
class KValue:
    value: float
    mode: str
    scores: tuple = ()


@dataclass(frozen=True)
class ScanCurve:
    parameter: str
    samples: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=float)
        if s.size > 1 and np.any(np.diff(s) <= 0):
            raise ValueError("scan samples must be strictly increasing")
        object.__setattr__(self, "samples", s)
        object.__setattr__(self, "values", np.asarray(self.values))


def _check_distinct(pops: np.ndarray, eps: float) -> None:
    if pops.size < 2:
        raise ValueError("need at least two populations")
    srt = np.sort(pops)
    if np.any(np.diff(srt) <= eps):
        raise TiedPopulations(f"populations {pops.tolist()} are not separated by more than {eps}")


def rank_relabel(populations, eps: float = TIE_TOL) -> np.ndarray:
    """Score m for the largest population down to 1 for the smallest."""
    p = np.asarray(populations, dtype=float)
    _check_distinct(p, eps)
    scores = np.empty(p.size, dtype=int)
    scores[np.argsort(p)] = np.arange(1, p.size + 1)
    return scores


def _k_product(scores) -> float:
    return math.prod(float(a) ** i for i, a in enumerate(scores, start=1))


def k_discrete(input_pops, output_pops, eps: float = TIE_TOL) -> KValue:
    """K = prod_i A_i^i where A_i is the score of the input level found in slot i."""
    pin = np.asarray(input_pops, dtype=float)
    pout = np.asarray(output_pops, dtype=float)
    if pin.shape != pout.shape:
        raise NotAPermutation("input and output population counts differ")
    scores = rank_relabel(pin, eps)
    assigned = []
    for value in pout:
        dist = np.abs(pin - value)
        level = int(np.argmin(dist))
        if dist[level] > eps:
            raise NotAPermutation(f"output population {value:.9g} matches no input level within {eps}")
        assigned.append(level)
    if len(set(assigned)) != len(assigned):
        raise NotAPermutation("output populations do not form a permutation of the input")
    a = tuple(int(scores[level]) for level in assigned)
    return KValue(value=int(round(_k_product(a))), mode=DISCRETE, scores=a)


def k_continuous(input_pops, output_pops, eps: float = TIE_TOL) -> KValue:
    """Real-valued K from piecewise-linear score interpolation, clamped to [1, m]."""
    pin = np.asarray(input_pops, dtype=float)
    pout = np.asarray(output_pops, dtype=float)
    scores = rank_relabel(pin, eps)
    order = np.argsort(pin)
    s = np.interp(pout, pin[order], scores[order].astype(float))
    s = np.clip(s, 1.0, float(pin.size))
    return KValue(value=_k_product(s), mode=CONTINUOUS, scores=tuple(s.tolist()))


def writhe(word) -> int:
    return sum(1 if lt.orientation == OVER else -1 for lt in word)


@dataclass(frozen=True)
class SchedulePolicy:
    """How a word is laid out in time and which letters follow the scanned phase.

    Pulse i starts at ``lead + i * spacing`` (shifted so the earliest start is
    ``lead``).  ``spacing`` defaults to ``duration``: back-to-back pulses with
    no background window, so F carries no dynamical phase from the background.
    ``spacing < duration`` makes neighbouring pulses overlap.
    ``phase_mask[i]`` selects whether letter i takes the scanned phase; letters
    outside the mask keep their own phase.
    """

    spacing: float | None = None
    duration: float = math.pi
    rabi: float = 1.0
    lead: float = 0.0
    tail: float = 0.0
    phase_mask: tuple[bool, ...] | None = None
    background: ControlParams = BASE_POINT
    pulse_offset: np.ndarray | None = field(default=None, compare=False)

    def build(self, word, phi: float | None = None) -> Schedule:
        letters = list(word)
        if phi is not None:
            mask = self.phase_mask or (True,) * len(letters)
            if len(mask) != len(letters):
                raise ValueError("phase_mask length does not match the word")
            letters = [lt.with_phase(phi) if m else lt for lt, m in zip(letters, mask)]
        spacing = self.duration if self.spacing is None else self.spacing
        offsets = [i * spacing for i in range(len(letters))]
        base = self.lead - min(offsets, default=0.0)
        pulses = tuple(
            PulseEvent(lt, base + off, self.duration, self.rabi) for lt, off in zip(letters, offsets)
        )
        end = max((p.end for p in pulses), default=self.lead)
        return Schedule(pulses, self.background, end + self.tail, self.pulse_offset)


SEQUENTIAL = SchedulePolicy()


def phase_scan(word, phi_samples, psi0, policy: SchedulePolicy = SEQUENTIAL) -> ScanCurve:
    """F(phi) = <psi_f|psi_i> with the word's phases set to phi."""
    psi0 = np.asarray(psi0, dtype=complex)
    values = []
    for phi in phi_samples:
        u = schedule_unitary(policy.build(word, phi))
        values.append(np.vdot(u @ psi0, psi0))
    return ScanCurve("phi", phi_samples, np.array(values))


def coherence_scan(
    word, eta: float, phi_samples, c, policy: SchedulePolicy = SEQUENTIAL, basis: str = "bare"
):
    """Final dressed populations versus phi for the mixed input of purity ``eta``.

    ``c`` holds amplitudes in ``basis`` ("bare" or "dressed"); the coherences
    scaled by ``eta`` are those of that basis.  Returns the curve and the
    per-level peak-to-peak amplitude over the scan.
    """
    frame = policy.build(word).frame
    rho0 = mixed_input(c, eta)
    if basis == "dressed":
        rho0 = frame.vectors @ rho0 @ frame.vectors.conj().T
    elif basis != "bare":
        raise ValueError(f"unknown basis {basis!r}")
    rows = []
    for phi in phi_samples:
        u = schedule_unitary(policy.build(word, phi))
        rows.append(dressed_populations(u @ rho0 @ u.conj().T, frame))
    pops = np.array(rows)
    return ScanCurve("phi", phi_samples, pops), np.ptp(pops, axis=0)


@dataclass(frozen=True)
class KScan:
    curve: ScanCurve
    discrete: list

    @property
    def continuous(self) -> np.ndarray:
        return self.curve.values


def k_scan(
    dts,
    psi0,
    first: BraidLetter | None = None,
    second: BraidLetter | None = None,
    *,
    t1: float = math.pi,
    eps: float = TIE_TOL,
    background: ControlParams = BASE_POINT,
) -> KScan:
    """K of the two-pulse word versus start separation dt = t2 - t1.

    ``first`` starts at t1 (pushed later when dt < 0 so both starts stay
    non-negative); discrete K is None wherever the output is no permutation.
    """
    first = first or letter("12o", math.pi / 2)
    second = second or letter("23u", math.pi / 2)
    psi0 = np.asarray(psi0, dtype=complex)
    cont, disc = [], []
    frame = None
    for dt in dts:
        s = two_pulse_schedule(first, second, t1 + max(0.0, -dt), dt, background=background)
        frame = frame or s.frame
        pin = dressed_populations(psi0, frame)[:3]
        pout = dressed_populations(schedule_unitary(s) @ psi0, frame)[:3]
        cont.append(k_continuous(pin, pout, eps).value)
        try:
            disc.append(k_discrete(pin, pout, eps).value)
        except NotAPermutation:
            disc.append(None)
    return KScan(ScanCurve("dt", dts, np.array(cont)), disc)


def breaking_generator(omega_g: float) -> np.ndarray:
    """Extra generator added to every pulse; diagonal (+1,-1,-1,-1) in the base dressed frame."""
    return omega_g * np.array(
        [[0, -1, 0, 0], [-1, 0, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]], dtype=complex
    )


def breaking_probe(word, omega_g: float, psi0, policy: SchedulePolicy = SEQUENTIAL) -> np.ndarray:
    """Final dressed populations when every pulse runs with H_g (+/-) H_kj."""
    if omega_g < 0:
        raise ValueError("omega_g must be non-negative")
    for lt in word:
        if set(lt.pair) == {1, 3}:
            raise UnsupportedPair("breaking probe is defined for pairs (1,2) and (2,3) only")
    p = SchedulePolicy(
        spacing=policy.spacing,
        duration=policy.duration,
        rabi=policy.rabi,
        lead=policy.lead,
        tail=policy.tail,
        background=policy.background,
        pulse_offset=breaking_generator(omega_g) if omega_g > 0 else None,
    )
    s = p.build(word)
    return dressed_populations(schedule_unitary(s) @ np.asarray(psi0, dtype=complex), s.frame)


# Words of the three-crossing comparison, in operator-product notation.
FIG4_WORDS = (
    "pi12o pi23u pi12o",
    "pi12u pi23o pi12o",
    "pi12u pi23u pi12o",
    "pi12o pi23o pi12o",
)


def all_orientation_words(pairs: Sequence[tuple[int, int]] = ((1, 2), (2, 3), (1, 2))):
    """Every over/under assignment on a fixed pair sequence."""
    for bits in range(2 ** len(pairs)):
        yield BraidWord(
            tuple(
                BraidLetter(pr, UNDER if (bits >> i) & 1 else OVER) for i, pr in enumerate(pairs)
            )
        )
