"""Single-qubit density matrices and their Bloch-vector description."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from swapmeter import linalg
from swapmeter.exceptions import UnphysicalStateError
from swapmeter.linalg import I2, PAULIS, ComplexMatrix

PHYSICAL_TOL = 1e-9
DEGENERATE_TOL = 1e-12


@dataclass(frozen=True)
class BlochVector:
    rx: float
    ry: float
    rz: float

    def __post_init__(self):
        for name in ("rx", "ry", "rz"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise UnphysicalStateError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, value)
        if self.length > 1 + PHYSICAL_TOL:
            raise UnphysicalStateError(
                f"Bloch vector length {self.length:.12g} exceeds 1")

    @classmethod
    def from_array(cls, r) -> BlochVector:
        rx, ry, rz = (float(c) for c in r)
        return cls(rx, ry, rz)

    def as_array(self) -> np.ndarray:
        return np.array([self.rx, self.ry, self.rz])

    @property
    def length(self) -> float:
        return math.sqrt(self.rx**2 + self.ry**2 + self.rz**2)

    def __neg__(self) -> BlochVector:
        return BlochVector(-self.rx, -self.ry, -self.rz)


@dataclass(frozen=True, eq=False)
class QubitState:
    """A validated 2x2 density matrix.

    Construction checks Hermiticity and unit trace to 1e-12 and that both
    eigenvalues lie in [0, 1] up to 1e-9. The stored matrix is read-only.
    """

    matrix: ComplexMatrix

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise UnphysicalStateError(f"qubit state must be 2x2, got {m.shape}")
        if not linalg.is_hermitian(m):
            raise UnphysicalStateError("density matrix is not Hermitian")
        if abs(linalg.trace(m) - 1) > linalg.ATOL:
            raise UnphysicalStateError(f"trace {linalg.trace(m)} != 1")
        # eigenvalues of a unit-trace Hermitian 2x2 are (1 +- |r|)/2
        r = np.linalg.norm(_bloch_components(m))
        if r > 1 + 2 * PHYSICAL_TOL:
            raise UnphysicalStateError(f"eigenvalue {(1 - r) / 2:.3g} is negative")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def bloch(self) -> BlochVector:
        return to_bloch(self)

    def allclose(self, other: QubitState, atol: float = linalg.ATOL) -> bool:
        return bool(np.allclose(self.matrix, other.matrix, rtol=0.0, atol=atol))

    def __repr__(self) -> str:
        b = _bloch_components(self.matrix)
        return "QubitState(bloch=({:.6g}, {:.6g}, {:.6g}))".format(*b)


@dataclass(frozen=True)
class EigenPair:
    """Spectrum of a qubit state, largest eigenvalue first.

    Eigenvectors are given as Bloch directions of the corresponding
    projectors. For the maximally mixed state they default to +z / -z and
    ``degenerate`` is set.
    """

    eigenvalues: tuple[float, float]
    eigenvectors: tuple[BlochVector, BlochVector]
    degenerate: bool = field(default=False)


def _bloch_components(m: np.ndarray) -> np.ndarray:
    return np.array([np.real(np.trace(m @ p)) for p in PAULIS])


def from_bloch(r: BlochVector) -> QubitState:
    rx, ry, rz = r.rx, r.ry, r.rz
    m = 0.5 * (I2 + rx * PAULIS[0] + ry * PAULIS[1] + rz * PAULIS[2])
    return QubitState(m)


def from_vector(r) -> QubitState:
    """Shorthand for ``from_bloch`` taking any length-3 sequence."""
    return from_bloch(BlochVector.from_array(r))


def to_bloch(rho: QubitState) -> BlochVector:
    return BlochVector.from_array(_bloch_components(rho.matrix))


def purity_length(rho: QubitState) -> float:
    return min(to_bloch(rho).length, 1.0)


def eigen(rho: QubitState) -> EigenPair:
    r = to_bloch(rho)
    length = r.length
    if length < DEGENERATE_TOL:
        up = BlochVector(0.0, 0.0, 1.0)
        return EigenPair((0.5, 0.5), (up, -up), degenerate=True)
    n = r.as_array() / length
    lam = min(length, 1.0)
    return EigenPair(
        ((1 + lam) / 2, (1 - lam) / 2),
        (BlochVector.from_array(n), BlochVector.from_array(-n)),
    )


def overlap(rho: QubitState, sigma: QubitState) -> float:
    """Hilbert-Schmidt overlap Tr[rho sigma]."""
    return float(np.real(linalg.trace(linalg.matmul(rho.matrix, sigma.matrix))))


def uhlmann_fidelity(rho: QubitState, sigma: QubitState) -> float:
    """Uhlmann fidelity ``Tr[sqrt(sqrt(rho) sigma sqrt(rho))]**2``.

    For qubits this equals ``Tr[rho sigma] + 2 sqrt(det(rho) det(sigma))``.
    """
    det_rho = max(float(np.real(np.linalg.det(rho.matrix))), 0.0)
    det_sigma = max(float(np.real(np.linalg.det(sigma.matrix))), 0.0)
    f = overlap(rho, sigma) + 2.0 * math.sqrt(det_rho * det_sigma)
    return min(max(f, 0.0), 1.0)


def random_bloch(rng: np.random.Generator, *, pure: bool = False) -> BlochVector:
    """Draw a Bloch vector uniformly from the sphere (``pure``) or the ball."""
    direction = rng.normal(size=3)
    direction /= np.linalg.norm(direction)
    length = 1.0 if pure else rng.uniform() ** (1 / 3)
    return BlochVector.from_array(length * direction)


def random_state(rng: np.random.Generator, *, pure: bool = False) -> QubitState:
    return from_bloch(random_bloch(rng, pure=pure))


MAXIMALLY_MIXED = from_bloch(BlochVector(0.0, 0.0, 0.0))
ZERO = from_bloch(BlochVector(0.0, 0.0, 1.0))
ONE = from_bloch(BlochVector(0.0, 0.0, -1.0))
