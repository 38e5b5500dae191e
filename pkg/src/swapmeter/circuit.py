"""The scattering circuit: H - controlled-SWAP - phase - H on the ancilla.

Two independent evaluations are provided. ``run_closed_form`` writes down the
ancilla's reduced density matrix directly from Tr[rho_a rho_b];
``run_full`` builds the 8x8 input state, conjugates it by the circuit
unitary and traces out the two target qubits. They must agree for gamma = 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from swapmeter import gates, linalg, states
from swapmeter.exceptions import VisibilityUnrecoverableError
from swapmeter.gates import PhaseGateSettings
from swapmeter.linalg import KET0_PROJ, SIGMA_X
from swapmeter.states import QubitState

COS_PHI_MIN = 1e-9


@dataclass(frozen=True)
class NoiseConfig:
    """Generic noise model standing in for pulse and readout imperfections.

    prep_depolarize:    depolarizing probability on each input after preparation.
    fredkin_depolarize: global depolarizing probability on the 3-qubit register
                        right after the controlled-SWAP.
    readout_sigma:      std. dev. of Gaussian noise added to each measured
                        visibility.
    """

    prep_depolarize: float = 0.0
    fredkin_depolarize: float = 0.0
    readout_sigma: float = 0.0

    def __post_init__(self):
        for name in ("prep_depolarize", "fredkin_depolarize"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {p}")
        if not self.readout_sigma >= 0.0:
            raise ValueError(f"readout_sigma must be >= 0, got {self.readout_sigma}")

    @property
    def is_noiseless(self) -> bool:
        return self.prep_depolarize == self.fredkin_depolarize == self.readout_sigma == 0.0


NOISELESS = NoiseConfig()


@dataclass(frozen=True)
class ScatteringOutcome:
    """Ancilla statistics at the end of the circuit.

    ``visibility`` is Tr[rho_a rho_b] of the inputs as fed to the circuit.
    ``signal`` is the transverse-magnetisation readout after dephasing the
    ancilla and applying the pi/2 pulse with azimuth delta; for gamma = 0 it
    equals sin(delta) cos(phi) Tr[rho_a rho_b].
    """

    ancilla: QubitState
    p0: float
    p1: float
    visibility: float
    signal: float
    settings: PhaseGateSettings = field(default_factory=PhaseGateSettings)


@dataclass(frozen=True)
class ShotResult:
    shots: int
    n0: int
    n1: int
    estimate: float
    std_error: float


def _outcome(ancilla: np.ndarray, visibility: float, signal: float,
             settings: PhaseGateSettings) -> ScatteringOutcome:
    anc = QubitState(ancilla)
    p0 = min(max(float(np.real(ancilla[0, 0])), 0.0), 1.0)
    return ScatteringOutcome(anc, p0, 1.0 - p0, visibility, signal, settings)


def run_closed_form(rho_a: QubitState, rho_b: QubitState,
                    settings: PhaseGateSettings = PhaseGateSettings()) -> ScatteringOutcome:
    if settings.gamma != 0.0:
        raise ValueError("closed form holds only for the exact Fredkin gate; use run_full")
    v = states.overlap(rho_a, rho_b)
    c, s = math.cos(settings.phi), math.sin(settings.phi)
    ancilla = np.array([[0.5 * (1 + c * v), 0.5j * s * v],
                        [-0.5j * s * v, 0.5 * (1 - c * v)]])
    return _outcome(ancilla, v, math.sin(settings.delta) * c * v, settings)


def circuit_unitary(settings: PhaseGateSettings) -> np.ndarray:
    h = gates.hadamard_on_ancilla()
    phase = gates.on_ancilla(gates.phase_gate(settings.phi))
    return h @ phase @ gates.fredkin(settings.gamma) @ h


def readout_signal(ancilla: QubitState, delta: float) -> float:
    """Dephase the ancilla, apply the pi/2 pulse with azimuth delta, read <sigma_x>."""
    rotated = linalg.conjugate(gates.pulse(delta), gates.dephase_z(ancilla).matrix)
    return float(np.real(linalg.trace(rotated @ SIGMA_X)))


def run_full(rho_a: QubitState, rho_b: QubitState,
             settings: PhaseGateSettings = PhaseGateSettings(),
             *, fredkin_depolarize: float = 0.0) -> ScatteringOutcome:
    rho_in = linalg.kron(linalg.kron(KET0_PROJ, rho_a.matrix), rho_b.matrix)
    h = gates.hadamard_on_ancilla()
    rho = linalg.conjugate(gates.fredkin(settings.gamma), linalg.conjugate(h, rho_in))
    if fredkin_depolarize:
        rho = gates.depolarize_matrix(rho, fredkin_depolarize)
    rho = linalg.conjugate(h @ gates.on_ancilla(gates.phase_gate(settings.phi)), rho)
    ancilla = QubitState(linalg.partial_trace_keep_first(rho))
    v = states.overlap(rho_a, rho_b)
    return _outcome(ancilla.matrix, v, readout_signal(ancilla, settings.delta), settings)


def _cos_phi(settings: PhaseGateSettings) -> float:
    c = math.cos(settings.phi)
    if abs(c) < COS_PHI_MIN:
        raise VisibilityUnrecoverableError(
            f"cos(phi) = {c:.3g}: visibility cannot be recovered from P0 - P1")
    return c


def sample(outcome: ScatteringOutcome, shots: int, seed=None) -> ShotResult:
    """Measure the ancilla ``shots`` times in the computational basis.

    ``seed`` may be an integer or a ``numpy.random.Generator``. The estimate
    (n0 - n1) / (shots cos(phi)) is clipped to [-1, 1].
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    c = _cos_phi(outcome.settings)
    rng = np.random.default_rng(seed)
    n0 = int(rng.binomial(shots, outcome.p0))
    n1 = shots - n0
    f0 = n0 / shots
    estimate = (n0 - n1) / shots / c
    std_error = 2.0 * math.sqrt(f0 * (1 - f0) / shots) / abs(c)
    return ShotResult(shots, n0, n1, min(max(estimate, -1.0), 1.0), std_error)


def measure_visibility(rho_a: QubitState, rho_b: QubitState,
                       settings: PhaseGateSettings = PhaseGateSettings(),
                       noise: NoiseConfig = NOISELESS,
                       shots: int | None = None,
                       rng: np.random.Generator | None = None) -> float:
    """One experimental estimate of Tr[rho_a rho_b] read from the ancilla.

    Noise enters after preparation, after the controlled-SWAP, and on the
    readout. Without ``shots`` the exact probabilities are used.
    """
    if rng is None:
        rng = np.random.default_rng()
    if noise.prep_depolarize:
        rho_a = gates.depolarize(rho_a, noise.prep_depolarize)
        rho_b = gates.depolarize(rho_b, noise.prep_depolarize)
    outcome = run_full(rho_a, rho_b, settings, fredkin_depolarize=noise.fredkin_depolarize)
    if shots is None:
        estimate = (outcome.p0 - outcome.p1) / _cos_phi(settings)
    else:
        estimate = sample(outcome, shots, rng).estimate
    if noise.readout_sigma:
        estimate += rng.normal(0.0, noise.readout_sigma)
    return float(estimate)


def visibility_from_signal(outcome: ScatteringOutcome) -> float:
    """Undo the readout scaling sin(delta) cos(phi) to recover Tr[rho_a rho_b]."""
    scale = math.sin(outcome.settings.delta) * math.cos(outcome.settings.phi)
    if abs(scale) < COS_PHI_MIN:
        raise VisibilityUnrecoverableError(
            f"readout scale sin(delta) cos(phi) = {scale:.3g} is zero")
    return outcome.signal / scale
