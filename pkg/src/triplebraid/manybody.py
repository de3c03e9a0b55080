"""Composite-state braiding on N qubits and Ising-type Pauli-sum generators."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import SameLabel, SizeMismatch, TooLarge
from .numerics import check_hermitian, expm_ih

MAX_SITES = 10

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True)
class PauliTerm:
    coefficient: float
    factors: str

    def __post_init__(self):
        f = self.factors.upper()
        if any(ch not in PAULI for ch in f):
            raise ValueError(f"bad Pauli string {self.factors!r}")
        object.__setattr__(self, "factors", f)

    def matrix(self) -> np.ndarray:
        return self.coefficient * reduce(np.kron, (PAULI[ch] for ch in self.factors))


def basis_index(bits: str, n: int | None = None) -> int:
    """Index of |e_1 ... e_N>, site 1 being the most significant bit."""
    if any(ch not in "01" for ch in bits):
        raise ValueError(f"basis label {bits!r} must be a bit string")
    if n is not None and len(bits) != n:
        raise SizeMismatch(f"label {bits!r} does not have {n} sites")
    return int(bits, 2)


def build_pauli_sum(terms, n: int) -> np.ndarray:
    if n > MAX_SITES:
        raise TooLarge(f"{n} sites exceeds the dense cap of {MAX_SITES}")
    h = np.zeros((2**n, 2**n), dtype=complex)
    for term in terms:
        if len(term.factors) != n:
            raise SizeMismatch(f"term {term.factors!r} has length {len(term.factors)}, expected {n}")
        h += term.matrix()
    return h


def xx_plus_yy(omega: float, n: int = 2, i: int = 1, j: int = 2) -> list[PauliTerm]:
    """omega (X_i X_j + Y_i Y_j) / 4, i.e. (omega/2)(s+ s- + s- s+)."""
    return [PauliTerm(omega / 4, _two_site(n, i, j, "X")), PauliTerm(omega / 4, _two_site(n, i, j, "Y"))]


def xx_minus_yy(omega: float, n: int = 2, i: int = 1, j: int = 2) -> list[PauliTerm]:
    return [PauliTerm(omega / 4, _two_site(n, i, j, "X")), PauliTerm(-omega / 4, _two_site(n, i, j, "Y"))]


def _two_site(n: int, i: int, j: int, p: str) -> str:
    f = ["I"] * n
    f[i - 1] = p
    f[j - 1] = p
    return "".join(f)


def composite_pi(k: str, j: str, phi: float = 0.0, orientation: str = "o") -> np.ndarray:
    if len(k) != len(j):
        raise SizeMismatch("basis labels have different lengths")
    if k == j:
        raise SameLabel(f"cannot braid {k!r} with itself")
    n = len(k)
    a, b = basis_index(k, n), basis_index(j, n)
    sign = {"o": -1j, "u": 1j}[orientation]
    u = np.eye(2**n, dtype=complex)
    u[a, a] = u[b, b] = 0.0
    u[a, b] = sign * np.exp(1j * phi)
    u[b, a] = sign * np.exp(-1j * phi)
    return u


@dataclass(frozen=True)
class PiRealization:
    unitary: np.ndarray
    leakage: float
    block_error: float  # max entrywise deviation from composite_pi on the pair block

    @property
    def braids_pair(self) -> bool:
        return self.block_error <= 1e-10 and self.leakage <= 1e-12


def realize_pi_via_hamiltonian(h, pair, duration: float, orientation: str = "o", phi: float = 0.0):
    h = check_hermitian(h)
    k, j = pair
    n = len(k)
    if h.shape[0] != 2**n:
        raise SizeMismatch(f"{h.shape[0]}-dim generator for {n}-site labels")
    sign = 1.0 if orientation == "o" else -1.0
    u = expm_ih(sign * h, duration)
    idx = [basis_index(k, n), basis_index(j, n)]
    target = composite_pi(k, j, phi, orientation)
    block_error = float(np.max(np.abs(u[np.ix_(idx, idx)] - target[np.ix_(idx, idx)])))
    rest = [i for i in range(2**n) if i not in idx]
    leakage = max((1.0 - abs(u[i, i]) ** 2 for i in rest), default=0.0)
    return PiRealization(unitary=u, leakage=float(max(leakage, 0.0)), block_error=block_error)
