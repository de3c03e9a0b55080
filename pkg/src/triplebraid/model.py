"""Four-level Hamiltonian family with a three-fold degenerate ground cluster.

Also hosts the analytic dressed frame, finite-difference gauge potentials and
fields over the control manifold, and the five-pod parent system together with
its large-detuning reduction to the four-level model.  Units: hbar = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DegenerateControls, DetuningTooSmall, StepTooLarge

SQRT2 = math.sqrt(2.0)
DEFAULT_STEP = 1e-5
FIVE_POD_MIN_RATIO = 10.0

PARAM_NAMES = ("theta", "alpha", "phi")


@dataclass(frozen=True)
class ControlParams:
    theta: float = math.pi / 2
    alpha: float = math.pi / 2
    phi: float = 0.0
    omega0: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.theta < math.pi:
            raise ValueError(f"theta={self.theta} must lie strictly inside (0, pi)")
        if not 0.0 <= self.alpha <= math.pi:
            raise ValueError(f"alpha={self.alpha} must lie in [0, pi]")
        if not math.isfinite(self.phi):
            raise ValueError("phi must be finite")
        if not self.omega0 > 0.0:
            raise ValueError(f"omega0={self.omega0} must be positive")


BASE_POINT = ControlParams()


@dataclass(frozen=True)
class RabiSet:
    omega1: float
    omega2: float
    omega3: float
    omega4: float
    delta3: float
    delta4: float

    def check(self, rtol: float = 1e-12) -> None:
        """Raise ValueError unless the degeneracy conditions hold."""
        scale = max(abs(self.omega1), abs(self.omega2), abs(self.omega3), abs(self.omega4), 1e-300)
        if abs(self.omega1 * self.omega2 - self.omega3 * self.omega4) > rtol * scale**2:
            raise ValueError("omega1*omega2 != omega3*omega4")
        if self.omega1 > 0:
            d3 = self.omega3**2 / self.omega1 - self.omega1
            d4 = self.omega4**2 / self.omega1 - self.omega1
            dscale = max(abs(d3), abs(d4), scale)
            if abs(self.delta3 - d3) > rtol * dscale or abs(self.delta4 - d4) > rtol * dscale:
                raise ValueError("detunings violate the degeneracy conditions")


@dataclass(frozen=True)
class DressedFrame:
    """Columns of ``vectors`` are |lambda_1>..|lambda_4> in the bare basis."""

    vectors: np.ndarray
    lowest_eigenvalue: float
    upper_eigenvalue: float

    def state(self, i: int) -> np.ndarray:
        """Dressed state with 1-based index ``i``."""
        return self.vectors[:, i - 1]

    def to_bare(self, dressed_amplitudes) -> np.ndarray:
        return self.vectors @ np.asarray(dressed_amplitudes, dtype=complex)

    def to_dressed(self, bare_amplitudes) -> np.ndarray:
        return self.vectors.conj().T @ np.asarray(bare_amplitudes, dtype=complex)

    def triple_projector(self) -> np.ndarray:
        v = self.vectors[:, :3]
        return v @ v.conj().T


@dataclass(frozen=True)
class FivePodSpec:
    omegap1: float
    omegap2: float
    omegap3: float
    omegap4: float
    delta5: float
    phi: float = 0.0

    def __post_init__(self):
        if not math.isclose(self.omegap1, self.omegap2, rel_tol=1e-12, abs_tol=0.0):
            raise ValueError("five-pod reduction requires omegap1 == omegap2")

    @property
    def max_rabi(self) -> float:
        return max(abs(self.omegap1), abs(self.omegap2), abs(self.omegap3), abs(self.omegap4))


@dataclass(frozen=True)
class GaugeResult:
    a_theta: np.ndarray
    a_alpha: np.ndarray
    f_matrix: np.ndarray


def _cot(x: float) -> float:
    # exact zero at pi/2 where cos() leaves a 6e-17 residue
    if x == math.pi / 2:
        return 0.0
    return math.cos(x) / math.sin(x)


def rabi_from_controls(p: ControlParams) -> RabiSet:
    o0 = p.omega0
    sa, ca = math.sin(p.alpha), math.cos(p.alpha)
    st, ct = math.sin(p.theta), math.cos(p.theta)
    if p.alpha == math.pi / 2:
        ca = 0.0
    if p.theta == math.pi / 2:
        ct = 0.0
    if p.alpha in (0.0, math.pi):
        sa = 0.0
    omega1 = o0 * sa * st
    if omega1 == 0.0:
        raise DegenerateControls("sin(alpha)*sin(theta) = 0 makes the detunings singular")
    omega2 = 2.0 * o0 * ca * _cot(p.theta)
    omega3 = SQRT2 * o0 * sa * ct
    omega4 = SQRT2 * o0 * ca
    return RabiSet(
        omega1=omega1,
        omega2=omega2,
        omega3=omega3,
        omega4=omega4,
        delta3=omega3**2 / omega1 - omega1,
        delta4=omega4**2 / omega1 - omega1,
    )


def build_h4(r: RabiSet, phi: float) -> np.ndarray:
    e = np.exp(1j * phi)
    ec = e.conjugate()
    o1, o2, o3, o4 = r.omega1, r.omega2, r.omega3, r.omega4
    h = np.array(
        [
            [0, o1 * e, o3, o4 * e],
            [o1 * ec, 0, o3 * ec, o4],
            [o3, o3 * e, r.delta3, o2 * e],
            [o4 * ec, o4, o2 * ec, r.delta4],
        ],
        dtype=complex,
    )
    return 0.5 * h


def hamiltonian(p: ControlParams) -> np.ndarray:
    return build_h4(rabi_from_controls(p), p.phi)


def _frame_vectors(theta: float, alpha: float, phi: float) -> np.ndarray:
    em = np.exp(-1j * phi)
    st, ct = math.sin(theta), math.cos(theta)
    sa, ca = math.sin(alpha), math.cos(alpha)
    if theta == math.pi / 2:
        ct = 0.0
    if alpha == math.pi / 2:
        ca = 0.0
    ket = np.eye(4, dtype=complex)
    b = (ket[0] + em * ket[1]) / SQRT2
    c = st * b + ct * ket[2]
    lam1 = (ket[0] - em * ket[1]) / SQRT2
    lam2 = ct * b - st * ket[2]
    lam3 = ca * c - em * sa * ket[3]
    lam4 = sa * c + em * ca * ket[3]
    return np.column_stack([lam1, lam2, lam3, lam4])


def dressed_frame(p: ControlParams) -> DressedFrame:
    r = rabi_from_controls(p)
    vectors = _frame_vectors(p.theta, p.alpha, p.phi)
    lowest = -0.5 * r.omega1
    upper = 0.5 * (r.delta3 + r.delta4) - 3.0 * lowest
    return DressedFrame(vectors=vectors, lowest_eigenvalue=lowest, upper_eigenvalue=upper)


def base_frame() -> DressedFrame:
    """Frame at theta = alpha = pi/2, phi = 0 where the pulses are built."""
    return dressed_frame(BASE_POINT)


def _shift(p: ControlParams, mu: str, delta: float) -> ControlParams:
    value = getattr(p, mu) + delta
    try:
        return replace(p, **{mu: value})
    except ValueError as exc:
        raise StepTooLarge(f"{mu}={value} leaves the valid parameter domain") from exc


def _check_mu(mu: str) -> None:
    if mu not in PARAM_NAMES:
        raise ValueError(f"unknown parameter {mu!r}; expected one of {PARAM_NAMES}")


def _pair_indices(pair) -> list[int]:
    idx = [int(i) - 1 for i in pair]
    if any(i < 0 or i > 3 for i in idx):
        raise ValueError(f"dressed indices must lie in 1..4, got {pair}")
    return idx


def gauge_connection(p: ControlParams, mu: str, pair=(1, 2), h: float = DEFAULT_STEP) -> np.ndarray:
    """A_mu^{jk} = i <lambda_j| d_mu |lambda_k> over the dressed states in ``pair``.

    Evaluated on the analytic smooth-gauge frame by central differences.
    """
    _check_mu(mu)
    idx = _pair_indices(pair)
    plus = _shift(p, mu, h / 2)
    minus = _shift(p, mu, -h / 2)
    v0 = _frame_vectors(p.theta, p.alpha, p.phi)[:, idx]
    vp = _frame_vectors(plus.theta, plus.alpha, plus.phi)[:, idx]
    vm = _frame_vectors(minus.theta, minus.alpha, minus.phi)[:, idx]
    return 1j * (v0.conj().T @ ((vp - vm) / h))


def gauge_field(p: ControlParams, pair=(2, 3), h: float = DEFAULT_STEP) -> GaugeResult:
    """F_{theta,alpha} = d_theta A_alpha - d_alpha A_theta - i [A_theta, A_alpha]."""
    a_theta = gauge_connection(p, "theta", pair, h)
    a_alpha = gauge_connection(p, "alpha", pair, h)
    d_theta_a_alpha = (
        gauge_connection(_shift(p, "theta", h / 2), "alpha", pair, h)
        - gauge_connection(_shift(p, "theta", -h / 2), "alpha", pair, h)
    ) / h
    d_alpha_a_theta = (
        gauge_connection(_shift(p, "alpha", h / 2), "theta", pair, h)
        - gauge_connection(_shift(p, "alpha", -h / 2), "theta", pair, h)
    ) / h
    f = d_theta_a_alpha - d_alpha_a_theta - 1j * (a_theta @ a_alpha - a_alpha @ a_theta)
    return GaugeResult(a_theta=a_theta, a_alpha=a_alpha, f_matrix=f)


def build_five_pod(s: FivePodSpec) -> np.ndarray:
    em = np.exp(-1j * s.phi)
    col = np.array([s.omegap1, s.omegap2 * em, s.omegap3, s.omegap4 * em], dtype=complex)
    h = np.zeros((5, 5), dtype=complex)
    h[:4, 4] = col
    h[4, :4] = col.conj()
    h[4, 4] = -2.0 * s.delta5
    return 0.5 * h


def reduce_five_pod(s: FivePodSpec) -> tuple[RabiSet, float]:
    """Adiabatic elimination of the common level, repackaged as a RabiSet."""
    if not s.delta5 > FIVE_POD_MIN_RATIO * s.max_rabi:
        raise DetuningTooSmall(
            f"delta5={s.delta5} must exceed {FIVE_POD_MIN_RATIO} x max Rabi ({s.max_rabi})"
        )
    d2 = 2.0 * s.delta5
    o1, o3, o4 = s.omegap1, s.omegap3, s.omegap4
    r = RabiSet(
        omega1=o1 * o1 / d2,
        omega2=o3 * o4 / d2,
        omega3=o1 * o3 / d2,
        omega4=o1 * o4 / d2,
        delta3=(o3 * o3 - o1 * o1) / d2,
        delta4=(o4 * o4 - o1 * o1) / d2,
    )
    return r, s.phi


def effective_four_level(s: FivePodSpec) -> np.ndarray:
    r, phi = reduce_five_pod(s)
    return build_h4(r, phi)


def five_pod_discrepancy(s: FivePodSpec, psi0, duration: float | None = None, samples: int = 101) -> float:
    """Max bare-population gap between the five-level and reduced dynamics.

    ``psi0`` lives on levels 1..4.  The default duration is one pi time of the
    reduced 1-2 coupling, pi / Omega_11.
    """
    from .numerics import hermitian_eig

    r, _ = reduce_five_pod(s)
    if duration is None:
        duration = math.pi / r.omega1
    psi4 = np.asarray(psi0, dtype=complex)
    psi5 = np.concatenate([psi4, [0.0]])
    full = hermitian_eig(build_five_pod(s))
    eff = hermitian_eig(effective_four_level(s))
    worst = 0.0
    for t in np.linspace(0.0, duration, samples):
        u5 = (full.eigenvectors * np.exp(-1j * full.eigenvalues * t)) @ full.eigenvectors.conj().T
        u4 = (eff.eigenvectors * np.exp(-1j * eff.eigenvalues * t)) @ eff.eigenvectors.conj().T
        p5 = np.abs(u5 @ psi5)[:4] ** 2
        p4 = np.abs(u4 @ psi4) ** 2
        worst = max(worst, float(np.max(np.abs(p5 - p4))))
    return worst
