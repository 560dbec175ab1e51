"""Single-qubit decoherence channels and their lifting to qubit registers.

Each channel is a set of 2x2 Kraus operators parameterized by the
dimensionless exposure gamma_t, with coherences/populations decaying like
exp(-gamma_t). Writing q = exp(-gamma_t), the operators are (rows listed
row by row):

* amplitude damping (|1> decays to |0>, i.e. toward the spin-up state):
  E1 = [[1, 0], [0, sqrt(q)]],  E2 = [[0, sqrt(1-q)], [0, 0]]
* phase damping (off-diagonals shrink, populations untouched):
  E1 = sqrt(q) I,  E2 = diag(sqrt(1-q), 0),  E3 = diag(0, sqrt(1-q))
* depolarizing (uniform Pauli noise):
  E1 = sqrt((1+3q)/4) I,  E_a = sqrt((1-q)/4) sigma_a for a = x, y, z.
  The weights are normalized so the Bloch vector contracts by exactly q;
  this makes the family a semigroup in gamma_t whose unique fixed point is
  the maximally mixed state.

Registers are modeled with independent, identical noise on every qubit:
the N-qubit channel is the sum over all tensor products of single-qubit
Kraus operators, computed qubit by qubit (single-qubit channels acting on
distinct qubits commute, so sequential application is exact).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .qstate import IDENTITY_2, PAULI_X, PAULI_Y, PAULI_Z

COMPLETENESS_TOL = 1e-12

AMPLITUDE_DAMPING = "amplitude_damping"
PHASE_DAMPING = "phase_damping"
DEPOLARIZING = "depolarizing"
CHANNEL_KINDS = (AMPLITUDE_DAMPING, PHASE_DAMPING, DEPOLARIZING)

_KIND_ALIASES = {
    "amplitude": AMPLITUDE_DAMPING,
    "amplitude_damping": AMPLITUDE_DAMPING,
    "phase": PHASE_DAMPING,
    "phase_damping": PHASE_DAMPING,
    "depolarizing": DEPOLARIZING,
    "depolarising": DEPOLARIZING,
}


@dataclass(frozen=True)
class KrausSet:
    """Kraus operators of one single-qubit channel at a fixed gamma_t."""

    kind: str
    gamma_t: float
    operators: tuple[np.ndarray, ...]


@dataclass(frozen=True)
class KrausCheck:
    """Deviation of sum_k E_k^dag E_k from the identity."""

    completeness_dev: float
    passed: bool


def _check_gamma_t(gamma_t: float) -> float:
    if gamma_t < 0.0 or not math.isfinite(gamma_t):
        raise ValueError(f"decoherence exposure gamma_t must be >= 0, got {gamma_t}")
    return float(gamma_t)


def _freeze(ops: list[np.ndarray]) -> tuple[np.ndarray, ...]:
    for op in ops:
        op.setflags(write=False)
    return tuple(ops)


def amplitude_damping_kraus(gamma_t: float) -> KrausSet:
    """Energy-loss channel: excited-state population decays by exp(-gamma_t)."""
    gamma_t = _check_gamma_t(gamma_t)
    q = math.exp(-gamma_t)
    e1 = np.array([[1.0, 0.0], [0.0, math.sqrt(q)]], dtype=complex)
    e2 = np.array([[0.0, math.sqrt(1.0 - q)], [0.0, 0.0]], dtype=complex)
    return KrausSet(AMPLITUDE_DAMPING, gamma_t, _freeze([e1, e2]))


def phase_damping_kraus(gamma_t: float) -> KrausSet:
    """Pure dephasing: coherences decay by exp(-gamma_t), no energy loss."""
    gamma_t = _check_gamma_t(gamma_t)
    q = math.exp(-gamma_t)
    e1 = math.sqrt(q) * IDENTITY_2
    e2 = np.array([[math.sqrt(1.0 - q), 0.0], [0.0, 0.0]], dtype=complex)
    e3 = np.array([[0.0, 0.0], [0.0, math.sqrt(1.0 - q)]], dtype=complex)
    return KrausSet(PHASE_DAMPING, gamma_t, _freeze([e1, e2, e3]))


def depolarizing_kraus(gamma_t: float) -> KrausSet:
    """Uniform Pauli noise contracting the Bloch vector by exp(-gamma_t)."""
    gamma_t = _check_gamma_t(gamma_t)
    q = math.exp(-gamma_t)
    w = math.sqrt((1.0 - q) / 4.0)
    e1 = math.sqrt((1.0 + 3.0 * q) / 4.0) * IDENTITY_2
    return KrausSet(
        DEPOLARIZING,
        gamma_t,
        _freeze([e1, w * PAULI_X, w * PAULI_Y, w * PAULI_Z]),
    )


_CONSTRUCTORS = {
    AMPLITUDE_DAMPING: amplitude_damping_kraus,
    PHASE_DAMPING: phase_damping_kraus,
    DEPOLARIZING: depolarizing_kraus,
}


def normalize_kind(kind: str) -> str:
    """Canonical channel name for a user-facing alias."""
    try:
        return _KIND_ALIASES[kind.strip().lower()]
    except KeyError:
        raise ValueError(
            f"unknown channel {kind!r}; expected one of amplitude, phase, depolarizing"
        ) from None


def kraus_set(kind: str, gamma_t: float) -> KrausSet:
    """Construct the Kraus set of a channel by (possibly aliased) name."""
    return _CONSTRUCTORS[normalize_kind(kind)](gamma_t)


def validate_kraus(kset: KrausSet) -> KrausCheck:
    """Check the completeness relation sum_k E_k^dag E_k = I entrywise."""
    total = sum(op.conj().T @ op for op in kset.operators)
    dev = float(np.abs(total - np.eye(total.shape[0])).max())
    return KrausCheck(dev, dev < COMPLETENESS_TOL)


def apply_channel_all_qubits(rho: np.ndarray, kset: KrausSet, n_qubits: int) -> np.ndarray:
    """Apply the single-qubit channel independently to every qubit.

    Equals the full N-qubit Kraus sum over all operator strings
    E_{k1} x ... x E_{kN}; evaluated qubit by qubit.
    """
    rho = np.ascontiguousarray(rho, dtype=np.complex128)
    dim = 1 << n_qubits
    if rho.shape != (dim, dim):
        raise ValueError(f"density matrix shape {rho.shape} does not match N = {n_qubits}")
    check = validate_kraus(kset)
    if not check.passed:
        raise ValueError(
            f"Kraus set is not trace preserving (completeness deviation {check.completeness_dev:g})"
        )
    stack = np.ascontiguousarray(np.stack(kset.operators), dtype=np.complex128)
    for qubit in range(n_qubits):
        rho = kernels.apply_single_qubit_kraus(rho, stack, qubit, n_qubits)
    return rho
