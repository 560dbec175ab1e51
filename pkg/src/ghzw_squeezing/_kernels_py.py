"""Pure-numpy implementations of the numerical hot paths.

Mirrors the compiled extension `_kernels`; whichever is available is picked
in :mod:`ghzw_squeezing.kernels`.
"""

from __future__ import annotations

import numpy as np


def apply_single_qubit_kraus(
    rho: np.ndarray, kraus: np.ndarray, qubit: int, n_qubits: int
) -> np.ndarray:
    """Apply sum_k (I x E_k x I) rho (I x E_k x I)^dagger on one qubit.

    ``kraus`` is an (m, 2, 2) stack; ``qubit`` counts from 0 at the most
    significant bit of the basis index.
    """
    dim = rho.shape[0]
    d_left = 1 << qubit
    d_right = dim >> (qubit + 1)
    rho_t = rho.reshape(d_left, 2, d_right, d_left, 2, d_right)
    out = np.einsum("kab,xbyudv,kcd->xayucv", kraus, rho_t, kraus.conj())
    return np.ascontiguousarray(out.reshape(dim, dim))


def expectations_real(rho: np.ndarray, ops: np.ndarray) -> np.ndarray:
    """Re(tr(rho @ op)) for each op in an (m, d, d) stack."""
    return np.einsum("ij,kji->k", rho, ops).real
