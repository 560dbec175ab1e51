# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled numerical hot paths: per-qubit Kraus application and batched
real expectation traces. Interface-identical to `_kernels_py`."""

import numpy as np

cdef extern from "complex.h":
    double complex conj(double complex) nogil
    double creal(double complex) nogil
    double cimag(double complex) nogil


def apply_single_qubit_kraus(const double complex[:, ::1] rho,
                             const double complex[:, :, ::1] kraus,
                             Py_ssize_t qubit,
                             Py_ssize_t n_qubits):
    """Apply sum_k (I x E_k x I) rho (I x E_k x I)^dagger on one qubit.

    ``kraus`` is an (m, 2, 2) stack; ``qubit`` counts from 0 at the most
    significant bit of the basis index.
    """
    cdef Py_ssize_t dim = rho.shape[0]
    cdef Py_ssize_t n_ops = kraus.shape[0]
    cdef Py_ssize_t bit = n_qubits - 1 - qubit
    cdef Py_ssize_t mask = (<Py_ssize_t> 1) << bit
    out_arr = np.zeros((dim, dim), dtype=np.complex128)
    cdef double complex[:, ::1] out = out_arr
    cdef Py_ssize_t k, i, j, a, b, ibase, jbase, ibit, jbit
    cdef double complex eia, acc
    with nogil:
        for k in range(n_ops):
            for i in range(dim):
                ibit = (i >> bit) & 1
                ibase = i & ~mask
                for j in range(dim):
                    jbit = (j >> bit) & 1
                    jbase = j & ~mask
                    acc = 0
                    for a in range(2):
                        eia = kraus[k, ibit, a]
                        if creal(eia) == 0.0 and cimag(eia) == 0.0:
                            continue
                        for b in range(2):
                            acc = acc + eia * rho[ibase | (a << bit), jbase | (b << bit)] * conj(kraus[k, jbit, b])
                    out[i, j] = out[i, j] + acc
    return out_arr


def expectations_real(const double complex[:, ::1] rho, const double complex[:, :, ::1] ops):
    """Re(tr(rho @ op)) for each op in an (m, d, d) stack."""
    cdef Py_ssize_t n_ops = ops.shape[0]
    cdef Py_ssize_t dim = rho.shape[0]
    out_arr = np.empty(n_ops, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t k, i, j
    cdef double acc
    with nogil:
        for k in range(n_ops):
            acc = 0.0
            for i in range(dim):
                for j in range(dim):
                    acc += creal(rho[i, j] * ops[k, j, i])
            out[k] = acc
    return out_arr
