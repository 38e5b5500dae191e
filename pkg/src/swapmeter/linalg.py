"""Dense complex matrices for 1-, 2- and 3-qubit objects.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Qubit order is
most-significant first, so for a 3-qubit operator the ancilla is the leading
tensor factor.
"""
from __future__ import annotations

import numpy as np

from swapmeter.exceptions import DimensionError

ComplexMatrix = np.ndarray

ATOL = 1e-12
SUPPORTED_DIMS = (2, 4, 8)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def matrix(entries, *, hermitian: bool = False) -> ComplexMatrix:
    """Build a square complex matrix, optionally checking that it is Hermitian.

    ``entries`` may be nested rows or a flat row-major sequence.
    """
    a = np.array(entries, dtype=complex)
    if a.ndim == 1:
        dim = int(round(np.sqrt(a.size)))
        if dim * dim != a.size:
            raise DimensionError(f"{a.size} entries do not form a square matrix")
        a = a.reshape(dim, dim)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] not in SUPPORTED_DIMS:
        raise DimensionError(f"dimension {a.shape[0]} not in {SUPPORTED_DIMS}")
    if hermitian and not is_hermitian(a):
        raise ValueError("matrix is not Hermitian to 1e-12")
    return _frozen(a)


def is_hermitian(a: ComplexMatrix, atol: float = ATOL) -> bool:
    return bool(np.max(np.abs(a - a.conj().T)) <= atol)


def matmul(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    if a.shape != b.shape:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def kron(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    na, nb = a.shape[0], b.shape[0]
    return (a[:, None, :, None] * b[None, :, None, :]).reshape(na * nb, na * nb)


def trace(a: ComplexMatrix) -> complex:
    return complex(np.trace(a))


def dagger(a: ComplexMatrix) -> ComplexMatrix:
    return a.conj().T


def partial_trace_keep_first(a: ComplexMatrix) -> ComplexMatrix:
    """Reduce a 3-qubit operator to the first qubit by tracing out qubits 2 and 3."""
    if a.shape != (8, 8):
        raise DimensionError(f"expected an 8x8 operator, got {a.shape}")
    return np.einsum("ikjk->ij", a.reshape(2, 4, 2, 4))


def conjugate(u: ComplexMatrix, rho: ComplexMatrix) -> ComplexMatrix:
    """Return ``u @ rho @ u^dagger``."""
    return matmul(matmul(u, rho), dagger(u))


def identity(dim: int) -> ComplexMatrix:
    return np.eye(dim, dtype=complex)


I2 = _frozen(identity(2))
SIGMA_X = _frozen(np.array([[0, 1], [1, 0]], dtype=complex))
SIGMA_Y = _frozen(np.array([[0, -1j], [1j, 0]], dtype=complex))
SIGMA_Z = _frozen(np.array([[1, 0], [0, -1]], dtype=complex))
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

KET0_PROJ = _frozen(np.array([[1, 0], [0, 0]], dtype=complex))
KET1_PROJ = _frozen(np.array([[0, 0], [0, 1]], dtype=complex))
