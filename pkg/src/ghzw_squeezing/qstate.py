"""Dense complex-matrix arithmetic and the pure/mixed states of the register.

Conventions used throughout the package:

* The computational basis index is the bit string b1 b2 ... bN read as a
  binary number with qubit 1 the most significant bit, so |100> of three
  qubits sits at index 4.
* |0> is the sigma_z = +1 eigenstate ("spin up"); |00...0> is the coherent
  state with maximal <Jz>.
* Tolerances: 1e-12 for exact-arithmetic identities, 1e-10 for physicality
  checks of states that went through a channel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

NORM_TOL = 1e-12
HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
EIGENVALUE_TOL = 1e-10

IDENTITY_2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with result[(i*db + k), (j*db + l)] = a[i, j] * b[k, l]."""
    return np.kron(np.asarray(a), np.asarray(b))


def ghz_state() -> np.ndarray:
    """(|000> + |111>) / sqrt(2) as an amplitude vector of length 8."""
    psi = np.zeros(8, dtype=complex)
    psi[0] = psi[7] = 1.0 / math.sqrt(2.0)
    return psi


def w_state() -> np.ndarray:
    """(|100> + |010> + |001>) / sqrt(3) as an amplitude vector of length 8."""
    psi = np.zeros(8, dtype=complex)
    psi[4] = psi[2] = psi[1] = 1.0 / math.sqrt(3.0)
    return psi


def superposition_state(alpha: float) -> np.ndarray:
    """sqrt(alpha)|GHZ> + sqrt(1 - alpha)|W>.

    GHZ and W have disjoint supports, so the result is normalized for any
    weight alpha in [0, 1].
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"superposition weight must lie in [0, 1], got {alpha}")
    return math.sqrt(alpha) * ghz_state() + math.sqrt(1.0 - alpha) * w_state()


def density_from_pure(psi: np.ndarray) -> np.ndarray:
    """Projector |psi><psi| of a normalized amplitude vector."""
    psi = np.asarray(psi, dtype=complex)
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > NORM_TOL:
        raise ValueError(f"state is not normalized: |psi| = {norm!r}")
    return np.outer(psi, psi.conj())


def expectation(rho: np.ndarray, obs: np.ndarray) -> float:
    """Re(tr(rho @ obs)) for a Hermitian observable.

    Raises ValueError on dimension mismatch or a non-Hermitian observable
    (checked entrywise against HERMITICITY_TOL).
    """
    rho = np.asarray(rho)
    obs = np.asarray(obs)
    if rho.shape != obs.shape or rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"dimension mismatch: rho {rho.shape} vs obs {obs.shape}")
    if np.abs(obs - obs.conj().T).max() > HERMITICITY_TOL:
        raise ValueError("observable is not Hermitian")
    return float(np.einsum("ij,ji->", rho, obs).real)


@dataclass(frozen=True)
class DensityCheck:
    """Outcome of the density-matrix physicality checks."""

    hermiticity_dev: float
    trace_dev: float
    min_eigenvalue: float
    passed: bool


def validate_density(rho: np.ndarray) -> DensityCheck:
    """Report Hermiticity/trace deviations and the smallest eigenvalue.

    Passes iff all three invariants hold: max|M - M^dag| < 1e-10,
    |tr(M) - 1| < 1e-10, and min eigenvalue >= -1e-10.
    """
    rho = np.asarray(rho, dtype=complex)
    herm_dev = float(np.abs(rho - rho.conj().T).max())
    trace_dev = float(abs(np.trace(rho) - 1.0))
    # eigvalsh needs an exactly Hermitian input; symmetrize first
    min_eig = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min())
    passed = (
        herm_dev < HERMITICITY_TOL
        and trace_dev < TRACE_TOL
        and min_eig >= -EIGENVALUE_TOL
    )
    return DensityCheck(herm_dev, trace_dev, min_eig, passed)
