"""Qutrit X and Z gates composed from braid letters on the dressed triple."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .braiding import BraidLetter, ideal_pi, letter
from .model import DressedFrame, base_frame

X3 = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=complex)

_PHASE_TOL = 1e-9


def z3(phi3: float) -> np.ndarray:
    return np.diag(np.exp(1j * phi3 * np.arange(3)))


@dataclass(frozen=True)
class QutritGateReport:
    unitary: np.ndarray  # bare basis, 4x4
    triple_block: np.ndarray  # dressed basis, 3x3
    pattern_distance: float
    global_phase: float
    phase_sign: int | None  # +1, -1, or None when undetermined


def compose(letters_product_order, frame: DressedFrame) -> np.ndarray:
    """Product of ideal pi operators; the last letter listed acts first."""
    u = np.eye(4, dtype=complex)
    for lt in letters_product_order:
        u = u @ ideal_pi(lt, frame)
    return u


def dressed_block(u: np.ndarray, frame: DressedFrame) -> np.ndarray:
    v = frame.vectors
    return (v.conj().T @ u @ v)[:3, :3]


def _pattern_distance(block: np.ndarray, target: np.ndarray) -> float:
    return float(np.max(np.abs(np.abs(block) - np.abs(target))))


def _wrap(x: float) -> float:
    return (x + math.pi) % (2 * math.pi) - math.pi


def synth_x3(frame: DressedFrame | None = None) -> QutritGateReport:
    frame = frame or base_frame()
    u = compose([letter("12o"), letter("23o")], frame)
    block = dressed_block(u, frame)
    return QutritGateReport(
        unitary=u,
        triple_block=block,
        pattern_distance=_pattern_distance(block, X3),
        global_phase=float(np.angle(block[1, 0])),
        phase_sign=None,
    )


def synth_z3(phi3: float, frame: DressedFrame | None = None) -> QutritGateReport:
    """pi23u(phi3) pi23o(0) pi12u(phi3) pi12o(0), rightmost first.

    ``phase_sign`` is +1 when successive diagonal ratios equal e^{+i phi3}
    (the Z3(phi3) convention) and -1 when they equal e^{-i phi3}.
    """
    frame = frame or base_frame()
    seq = [
        BraidLetter((2, 3), "u", phi3),
        BraidLetter((2, 3), "o", 0.0),
        BraidLetter((1, 2), "u", phi3),
        BraidLetter((1, 2), "o", 0.0),
    ]
    u = compose(seq, frame)
    block = dressed_block(u, frame)
    d = np.diag(block)
    ratio = float(np.angle(d[1] / d[0]))
    plus = abs(_wrap(ratio - phi3)) < _PHASE_TOL
    minus = abs(_wrap(ratio + phi3)) < _PHASE_TOL
    sign = None if plus == minus else (1 if plus else -1)
    return QutritGateReport(
        unitary=u,
        triple_block=block,
        pattern_distance=_pattern_distance(block, np.eye(3)),
        global_phase=float(np.angle(d[0])),
        phase_sign=sign,
    )


def successive_phase_ratios(block: np.ndarray) -> tuple[float, float]:
    d = np.diag(block)
    return float(np.angle(d[1] / d[0])), float(np.angle(d[2] / d[1]))


def equal_up_to_global_phase(a: np.ndarray, b: np.ndarray) -> float:
    """Frobenius distance between ``a`` and ``b`` after removing the best global phase."""
    overlap = np.vdot(b, a)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    return float(np.linalg.norm(a - phase * b))
