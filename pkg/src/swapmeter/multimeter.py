"""Multimeter applications of the scattering circuit.

* ``tomography``: three fixed probes give the Bloch components of an unknown state.
* ``eigen_scan``: pure probes swept over the Bloch sphere; the extreme
  visibilities are the eigenvalues of the unknown state.
* ``overlap_experiment`` / ``purity_experiment``: direct Tr[rho_a rho_b] and
  Tr[rho^2] measurements.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from swapmeter import prep, states
from swapmeter.circuit import NOISELESS, NoiseConfig, measure_visibility
from swapmeter.gates import PhaseGateSettings
from swapmeter.states import BlochVector, QubitState

PROBES = (
    states.from_vector((1.0, 0.0, 0.0)),
    states.from_vector((0.0, 1.0, 0.0)),
    states.from_vector((0.0, 0.0, 1.0)),
)

THETA_RANGE = (-math.pi / 2, math.pi / 2)  # elevation, poles included
PHI_RANGE = (0.0, 2 * math.pi)  # azimuth, upper end excluded
DEFAULT_STEP = math.radians(15)


@dataclass(frozen=True)
class TomographyResult:
    reconstructed: QubitState
    raw_visibilities: tuple[float, float, float]
    fidelity_vs_truth: float | None = None


@dataclass(frozen=True)
class ScanPoint:
    theta: float
    phi: float
    visibility: float


@dataclass(frozen=True)
class EigenScanResult:
    grid: tuple[ScanPoint, ...]
    max_point: ScanPoint
    min_point: ScanPoint

    @property
    def eigenvalues(self) -> tuple[float, float]:
        return self.max_point.visibility, self.min_point.visibility

    @property
    def eigenvectors(self) -> tuple[BlochVector, BlochVector]:
        return tuple(prep.angles_to_bloch(1.0, p.theta, p.phi)
                     for p in (self.max_point, self.min_point))


def _clamp_to_ball(r: np.ndarray) -> np.ndarray:
    norm = np.linalg.norm(r)
    return r / norm if norm > 1 else r


def tomography(unknown: QubitState, noise: NoiseConfig = NOISELESS,
               shots: int | None = None, seed=None,
               settings: PhaseGateSettings = PhaseGateSettings()) -> TomographyResult:
    """Reconstruct ``unknown`` from its visibilities against the +x, +y, +z probes.

    Each visibility is (1 + r_i) / 2, so r_i = 2 v_i - 1. A noisy estimate
    outside the Bloch ball is pulled radially back onto the sphere.
    """
    rng = np.random.default_rng(seed)
    vis = tuple(measure_visibility(probe, unknown, settings, noise, shots, rng)
                for probe in PROBES)
    r = _clamp_to_ball(2 * np.array(vis) - 1)
    reconstructed = states.from_vector(r)
    return TomographyResult(reconstructed, vis,
                            states.uhlmann_fidelity(unknown, reconstructed))


def _grid_count(span: float, step: float, what: str) -> int:
    if not step > 0:
        raise ValueError(f"{what} step must be positive, got {step}")
    n = span / step
    if abs(n - round(n)) > 1e-9:
        raise ValueError(f"{what} step {math.degrees(step):.6g} deg does not divide "
                         f"the {math.degrees(span):.6g} deg range")
    return int(round(n))


def scan_grid(theta_step: float = DEFAULT_STEP,
              phi_step: float = DEFAULT_STEP) -> list[tuple[float, float]]:
    """(theta, phi) pairs, theta ascending then phi ascending."""
    n_theta = _grid_count(THETA_RANGE[1] - THETA_RANGE[0], theta_step, "theta")
    n_phi = _grid_count(PHI_RANGE[1] - PHI_RANGE[0], phi_step, "phi")
    thetas = [THETA_RANGE[0] + i * theta_step for i in range(n_theta + 1)]
    phis = [PHI_RANGE[0] + j * phi_step for j in range(n_phi)]
    return [(t, p) for t in thetas for p in phis]


def _probe_key(theta: float, phi: float) -> tuple:
    # all azimuths at a pole describe the same probe state
    if abs(abs(theta) - math.pi / 2) < 1e-12:
        return (math.copysign(1.0, theta),)
    return (theta, phi)


def eigen_scan(unknown: QubitState, theta_step: float = DEFAULT_STEP,
               phi_step: float = DEFAULT_STEP, noise: NoiseConfig = NOISELESS,
               shots: int | None = None, seed=None,
               settings: PhaseGateSettings = PhaseGateSettings()) -> EigenScanResult:
    """Sweep pure probes over the sphere and take the extreme visibilities.

    Probe directions use elevation ``theta`` in [-90, 90] deg and azimuth
    ``phi`` in [0, 360) deg. Each distinct probe state is measured once.
    Ties go to the first grid point in (theta, phi) order.
    """
    rng = np.random.default_rng(seed)
    measured: dict[tuple, float] = {}
    grid = []
    for theta, phi in scan_grid(theta_step, phi_step):
        key = _probe_key(theta, phi)
        if key not in measured:
            probe = prep.prepare_angles(1.0, theta, phi)
            measured[key] = measure_visibility(probe, unknown, settings, noise, shots, rng)
        grid.append(ScanPoint(theta, phi, measured[key]))
    best = max(grid, key=lambda p: p.visibility)
    worst = min(grid, key=lambda p: p.visibility)
    return EigenScanResult(tuple(grid), best, worst)


def overlap_experiment(a: QubitState, b: QubitState,
                       settings: PhaseGateSettings = PhaseGateSettings(),
                       noise: NoiseConfig = NOISELESS,
                       shots: int | None = None, seed=None) -> float:
    return measure_visibility(a, b, settings, noise, shots, np.random.default_rng(seed))


def overlap_pair(ra: float, rb: float, theta: float) -> tuple[QubitState, QubitState]:
    """Two states of lengths ra, rb along +z and at angle ``theta`` from it in the xz plane."""
    a = prep.prepare_state((0.0, 0.0, ra))
    b = prep.prepare_state((rb * math.sin(theta), 0.0, rb * math.cos(theta)))
    return a, b


def purity_experiment(eta: float, settings: PhaseGateSettings = PhaseGateSettings(),
                      noise: NoiseConfig = NOISELESS, shots: int | None = None,
                      seed=None) -> tuple[float, float]:
    """Feed two copies of (I + cos(eta) sigma_z)/2; return (visibility, extracted length).

    The length is sqrt(2 v - 1), taken as 0 if noise pushes v below 1/2.
    """
    if not 0.0 <= eta <= math.pi / 2 + 1e-12:
        raise ValueError(f"eta must be in [0, pi/2], got {eta}")
    rho = prep.prepare_state((0.0, 0.0, math.cos(eta)))
    rng = np.random.default_rng(seed)
    v = measure_visibility(rho, rho, settings, noise, shots, rng)
    return v, math.sqrt(max(2 * v - 1, 0.0))
