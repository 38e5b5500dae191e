"""Gates and channels used by the scattering circuit.

Qubit order for 3-qubit operators is (ancilla, a, b), most significant first.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from swapmeter import linalg
from swapmeter.linalg import I2, PAULIS, ComplexMatrix
from swapmeter.states import QubitState

TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class PhaseGateSettings:
    """Angles of the circuit, in radians.

    phi:   interferometer phase applied to the ancilla.
    delta: azimuth of the pi/2 readout pulse on the ancilla.
    gamma: extra phase picked up by the swapped amplitudes of the Fredkin gate.
    """

    phi: float = 0.0
    delta: float = math.pi / 2
    gamma: float = 0.0

    def __post_init__(self):
        for name in ("phi", "delta", "gamma"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, value)

    def reduced(self) -> dict[str, float]:
        """Angles folded into [0, 2*pi) for display."""
        return {k: getattr(self, k) % TWO_PI for k in ("phi", "delta", "gamma")}


# Experimental convention that cancels the extra Fredkin phase.
COMPENSATED = PhaseGateSettings(phi=math.pi / 4, delta=3 * math.pi / 2)


def hadamard() -> ComplexMatrix:
    return np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)


def phase_gate(phi: float) -> ComplexMatrix:
    """z rotation exp(-i phi sigma_z / 2)."""
    return np.diag([np.exp(-0.5j * phi), np.exp(0.5j * phi)])


def rotation(axis, angle: float) -> ComplexMatrix:
    """exp(-i angle/2 n.sigma) for a unit axis n."""
    n = np.asarray(axis, dtype=float)
    if n.shape != (3,) or abs(np.linalg.norm(n) - 1) > 1e-9:
        raise ValueError(f"rotation axis must be a unit 3-vector, got {axis!r}")
    n_sigma = n[0] * PAULIS[0] + n[1] * PAULIS[1] + n[2] * PAULIS[2]
    return math.cos(angle / 2) * I2 - 1j * math.sin(angle / 2) * n_sigma


def pulse(azimuth: float, angle: float = math.pi / 2) -> ComplexMatrix:
    """Rotation about the in-plane axis (cos azimuth, sin azimuth, 0)."""
    return rotation((math.cos(azimuth), math.sin(azimuth), 0.0), angle)


@functools.lru_cache(maxsize=64)
def fredkin(gamma: float = 0.0) -> ComplexMatrix:
    """Controlled-SWAP on (ancilla, a, b).

    With the ancilla in |1>, the amplitudes of |101> and |110> are exchanged
    and both multiplied by exp(i gamma). ``gamma=0`` is the exact Fredkin gate.
    """
    u = np.eye(8, dtype=complex)
    phase = np.exp(1j * gamma)
    u[5, 5] = u[6, 6] = 0
    u[5, 6] = u[6, 5] = phase
    u.setflags(write=False)
    return u


@functools.lru_cache(maxsize=1)
def hadamard_on_ancilla() -> ComplexMatrix:
    u = on_ancilla(hadamard())
    u.setflags(write=False)
    return u


def on_ancilla(u: ComplexMatrix) -> ComplexMatrix:
    """Lift a single-qubit gate to act on the ancilla of the 3-qubit register."""
    return linalg.kron(u, linalg.identity(4))


def dephase_z(rho: QubitState) -> QubitState:
    """Erase the off-diagonal elements (field-gradient dephasing)."""
    return QubitState(np.diag(np.diag(rho.matrix)))


def depolarize(rho: QubitState, p: float) -> QubitState:
    """Mix with the maximally mixed state: (1-p) rho + p I/2."""
    return QubitState(depolarize_matrix(rho.matrix, p))


def depolarize_matrix(rho: ComplexMatrix, p: float) -> ComplexMatrix:
    """Depolarizing channel on a density matrix of any dimension."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"depolarizing probability must be in [0, 1], got {p}")
    dim = rho.shape[0]
    return (1 - p) * rho + p * linalg.identity(dim) / dim
