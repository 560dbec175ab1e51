"""Collective spin observables and the minimum-variance squeezing criterion.

Units are hbar = 1 with J_a = (1/2) sum_i sigma_a^(i), so a register of N
spins has total spin quantum number N/2 and a coherent product state has
transverse variance N/4 (squeezing parameter 1).

The squeezing parameter is epsilon = 4 * v_min / N where v_min is the
minimum variance of J projected onto the plane perpendicular to a reference
direction. Reference directions are taken either as explicit (theta, phi)
angles or from the computed mean spin vector; interfaces accept degrees,
internals work in radians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .qstate import (
    IDENTITY_2,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    tensor,
    validate_density,
)

DEGENERATE_MEAN_TOL = 1e-9
UNIT_TOL = 1e-12
VARIANCE_CLAMP_TOL = 1e-10

_PAULIS = {"x": PAULI_X, "y": PAULI_Y, "z": PAULI_Z}


@dataclass(frozen=True)
class SpinEnsemble:
    """A register of n_qubits spin-1/2 particles treated collectively."""

    n_qubits: int

    def __post_init__(self) -> None:
        if self.n_qubits < 1:
            raise ValueError(f"need at least one qubit, got {self.n_qubits}")

    @property
    def j_total(self) -> float:
        return self.n_qubits / 2

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits


@dataclass(frozen=True)
class Direction:
    """Reference direction on the Bloch sphere, in degrees.

    theta_deg is the polar angle from +z, phi_deg the azimuth from +x.
    """

    theta_deg: float
    phi_deg: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.theta_deg <= 180.0:
            raise ValueError(f"theta must lie in [0, 180] degrees, got {self.theta_deg}")
        if not 0.0 <= self.phi_deg < 360.0:
            raise ValueError(f"phi must lie in [0, 360) degrees, got {self.phi_deg}")

    def unit_vector(self) -> np.ndarray:
        th = math.radians(self.theta_deg)
        ph = math.radians(self.phi_deg)
        return np.array(
            [math.sin(th) * math.cos(ph), math.sin(th) * math.sin(ph), math.cos(th)]
        )


@dataclass(frozen=True)
class MeanSpinVector:
    """(<Jx>, <Jy>, <Jz>) of a state."""

    jx: float
    jy: float
    jz: float

    def as_array(self) -> np.ndarray:
        return np.array([self.jx, self.jy, self.jz])

    @property
    def magnitude(self) -> float:
        return math.sqrt(self.jx**2 + self.jy**2 + self.jz**2)


@dataclass(frozen=True)
class SqueezingResult:
    """Squeezing parameter, the minimizing in-plane variance and angle, and
    the mean spin vector of the evaluated state."""

    epsilon: float
    v_min: float
    phi_star_rad: float
    mean_spin: MeanSpinVector

    @property
    def squeezed(self) -> bool:
        return self.epsilon < 1.0


@lru_cache(maxsize=None)
def _collective_operator_cached(axis: str, n_qubits: int) -> np.ndarray:
    single = _PAULIS[axis]
    dim = 1 << n_qubits
    total = np.zeros((dim, dim), dtype=complex)
    for i in range(n_qubits):
        op = np.eye(1, dtype=complex)
        for j in range(n_qubits):
            op = tensor(op, single if j == i else IDENTITY_2)
        total += op
    total *= 0.5
    total.setflags(write=False)
    return total


def collective_operator(axis: str, ensemble: SpinEnsemble) -> np.ndarray:
    """J_a = (1/2) sum_i sigma_a^(i) for axis a in {x, y, z}.

    Returned matrices are cached per (axis, N) and marked read-only.
    """
    if axis not in _PAULIS:
        raise ValueError(f"axis must be one of x, y, z, got {axis!r}")
    return _collective_operator_cached(axis, ensemble.n_qubits)


@lru_cache(maxsize=None)
def _moment_operator_stack(n_qubits: int) -> np.ndarray:
    """Stack of the 9 Hermitian operators needed for first and second spin
    moments: Jx, Jy, Jz then the symmetrized products (xx, yy, zz, xy, xz, yz).
    """
    js = [_collective_operator_cached(a, n_qubits) for a in ("x", "y", "z")]
    ops = list(js)
    for a, b in ((0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)):
        ops.append(0.5 * (js[a] @ js[b] + js[b] @ js[a]))
    stack = np.ascontiguousarray(np.stack(ops), dtype=np.complex128)
    stack.setflags(write=False)
    return stack


def spin_moments(rho: np.ndarray, ensemble: SpinEnsemble) -> tuple[np.ndarray, np.ndarray]:
    """First moment vector m_a = <J_a> and symmetrized second-moment matrix
    S_ab = <J_a J_b + J_b J_a> / 2.

    Every directional variance follows from these: Var(J_n) = n.S.n - (n.m)^2.
    """
    rho = np.ascontiguousarray(rho, dtype=np.complex128)
    if rho.shape != (ensemble.dim, ensemble.dim):
        raise ValueError(f"density matrix shape {rho.shape} does not match N = {ensemble.n_qubits}")
    vals = kernels.expectations_real(rho, _moment_operator_stack(ensemble.n_qubits))
    mean = vals[:3].copy()
    second = np.empty((3, 3))
    second[0, 0], second[1, 1], second[2, 2] = vals[3], vals[4], vals[5]
    second[0, 1] = second[1, 0] = vals[6]
    second[0, 2] = second[2, 0] = vals[7]
    second[1, 2] = second[2, 1] = vals[8]
    return mean, second


def mean_spin_vector(rho: np.ndarray, ensemble: SpinEnsemble) -> MeanSpinVector:
    """(<Jx>, <Jy>, <Jz>) of a state."""
    mean, _ = spin_moments(rho, ensemble)
    return MeanSpinVector(float(mean[0]), float(mean[1]), float(mean[2]))


def _clamp_variance(value: float) -> float:
    if value >= 0.0:
        return value
    if value >= -VARIANCE_CLAMP_TOL:
        return 0.0
    raise ValueError(f"variance {value} is negative beyond tolerance; invalid density matrix?")


def variance_along(rho: np.ndarray, unit_dir: np.ndarray, ensemble: SpinEnsemble) -> float:
    """Var(J_n) = <J_n^2> - <J_n>^2 for J_n = n . (Jx, Jy, Jz)."""
    n = np.asarray(unit_dir, dtype=float)
    if n.shape != (3,) or abs(np.linalg.norm(n) - 1.0) > UNIT_TOL:
        raise ValueError(f"direction must be a 3-component unit vector, got {unit_dir!r}")
    mean, second = spin_moments(rho, ensemble)
    return _clamp_variance(float(n @ second @ n - (n @ mean) ** 2))


def perpendicular_basis(unit_dir: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic orthonormal pair (e1, e2) spanning the plane normal to n.

    e1 = normalize(z x n) unless n is within 1e-9 of +-z, in which case
    e1 = x; e2 = n x e1 always.
    """
    n = np.asarray(unit_dir, dtype=float)
    if n.shape != (3,):
        raise ValueError(f"direction must have 3 components, got {unit_dir!r}")
    norm = np.linalg.norm(n)
    if norm < UNIT_TOL:
        raise ValueError("zero vector has no perpendicular plane")
    if abs(norm - 1.0) > UNIT_TOL:
        raise ValueError(f"direction must be a unit vector, |n| = {norm!r}")
    if abs(n[2]) < 1.0 - 1e-9:
        e1 = np.cross(np.array([0.0, 0.0, 1.0]), n)
        e1 /= np.linalg.norm(e1)
    else:
        e1 = np.array([1.0, 0.0, 0.0])
    e2 = np.cross(n, e1)
    return e1, e2


def _min_variance_from_moments(
    mean: np.ndarray, second: np.ndarray, n_vec: np.ndarray
) -> tuple[float, float]:
    """Closed-form minimum of Var(cos(phi) J_e1 + sin(phi) J_e2) over phi.

    Builds the 2x2 covariance of (J_e1, J_e2); the minimum variance is its
    smaller eigenvalue, attained at the eigenvector angle reduced to [0, pi).
    """
    e1, e2 = perpendicular_basis(n_vec)
    m1 = float(e1 @ mean)
    m2 = float(e2 @ mean)
    c11 = float(e1 @ second @ e1) - m1 * m1
    c22 = float(e2 @ second @ e2) - m2 * m2
    c12 = float(e1 @ second @ e2) - m1 * m2
    radius = math.hypot(c11 - c22, 2.0 * c12)
    v_min = _clamp_variance(0.5 * (c11 + c22) - 0.5 * radius)
    if c12 == 0.0 and c11 == c22:
        phi_star = 0.0  # isotropic covariance: every angle minimizes, report 0
    else:
        phi_star = 0.5 * (math.atan2(2.0 * c12, c11 - c22) + math.pi) % math.pi
    return v_min, phi_star


def min_perpendicular_variance(
    rho: np.ndarray, direction: Direction, ensemble: SpinEnsemble
) -> tuple[float, float]:
    """Minimum variance in the plane perpendicular to `direction` and the
    in-plane angle (radians, in [0, pi)) where it is attained."""
    if not validate_density(rho).passed:
        raise ValueError("input is not a valid density matrix")
    mean, second = spin_moments(rho, ensemble)
    return _min_variance_from_moments(mean, second, direction.unit_vector())


def squeezing_parameter(
    rho: np.ndarray, direction: Direction, ensemble: SpinEnsemble
) -> SqueezingResult:
    """Squeezing parameter epsilon = 4 * v_min / N for the plane
    perpendicular to `direction`; epsilon < 1 signals squeezing."""
    if not validate_density(rho).passed:
        raise ValueError("input is not a valid density matrix")
    mean, second = spin_moments(rho, ensemble)
    v_min, phi_star = _min_variance_from_moments(mean, second, direction.unit_vector())
    return SqueezingResult(
        epsilon=4.0 * v_min / ensemble.n_qubits,
        v_min=v_min,
        phi_star_rad=phi_star,
        mean_spin=MeanSpinVector(float(mean[0]), float(mean[1]), float(mean[2])),
    )


def mean_spin_direction(rho: np.ndarray, ensemble: SpinEnsemble) -> Direction | None:
    """Direction of the mean spin vector, or None when its magnitude is
    below 1e-9 (e.g. pure GHZ) and no direction is defined."""
    mean = mean_spin_vector(rho, ensemble)
    mag = mean.magnitude
    if mag < DEGENERATE_MEAN_TOL:
        return None
    theta = math.degrees(math.acos(max(-1.0, min(1.0, mean.jz / mag))))
    phi = math.degrees(math.atan2(mean.jy, mean.jx)) % 360.0
    if phi >= 360.0:  # fmod of a tiny negative angle can round up to 360
        phi = 0.0
    if theta == 0.0 or theta == 180.0:
        phi = 0.0
    return Direction(theta_deg=theta, phi_deg=phi)
