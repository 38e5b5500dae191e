"""One-qubit quantum fingerprinting with a SWAP-test referee.

Alice and Bob each send one of six Pauli eigenstates. The referee feeds both
into the scattering circuit at phi = 0 and declares "equal" when the ancilla
is found in |0>, which happens with probability (1 + |<a|b>|^2) / 2. Equal
fingerprints are therefore always accepted; distinct ones are wrongly
accepted with probability at most (1 + delta^2) / 2.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from swapmeter import states
from swapmeter.circuit import NOISELESS, NoiseConfig, measure_visibility
from swapmeter.gates import PhaseGateSettings
from swapmeter.states import QubitState

LABELS = ("+x", "-x", "+y", "-y", "+z", "-z")
_DIRECTIONS = ((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1))

# Any classical one-bit scheme with one-sided error must accept every distinct pair.
CLASSICAL_ONE_BIT_ERROR = 1.0


@dataclass(frozen=True)
class FingerprintAlphabet:
    states: tuple[QubitState, ...]
    labels: tuple[str, ...]
    delta_max: float


@dataclass(frozen=True)
class FingerprintReport:
    table: np.ndarray  # overlaps, [alpha, beta]
    per_pair_accept_prob: np.ndarray
    max_distinct_overlap: float
    one_sided_error: float
    labels: tuple[str, ...] = LABELS

    @property
    def classical_gap(self) -> float:
        return classical_baseline() - self.one_sided_error

    def summary(self) -> dict[str, float]:
        return {"max_distinct_overlap": self.max_distinct_overlap,
                "one_sided_error": self.one_sided_error}

    def rows(self):
        for a, b in itertools.product(range(len(self.labels)), repeat=2):
            yield (self.labels[a], self.labels[b], float(self.table[a, b]),
                   float(self.per_pair_accept_prob[a, b]))


def _pure_state_vector(direction) -> np.ndarray:
    rho = states.from_vector(direction).matrix
    w, v = np.linalg.eigh(rho)
    return v[:, np.argmax(w)]


def build_alphabet() -> FingerprintAlphabet:
    fingerprints = tuple(states.from_vector(d) for d in _DIRECTIONS)
    kets = [_pure_state_vector(d) for d in _DIRECTIONS]
    delta = max(abs(np.vdot(kets[i], kets[j]))
                for i, j in itertools.permutations(range(len(kets)), 2))
    return FingerprintAlphabet(fingerprints, LABELS, float(delta))


ALPHABET = build_alphabet()


def _check_index(i: int) -> None:
    if not 0 <= i < len(ALPHABET.states):
        raise IndexError(f"fingerprint index must be in 0..5, got {i}")


def referee_compare(alpha: int, beta: int,
                    settings: PhaseGateSettings = PhaseGateSettings(),
                    noise: NoiseConfig = NOISELESS, shots: int | None = None,
                    seed=None) -> tuple[float, float]:
    """Return (overlap estimate, probability the referee declares equal)."""
    _check_index(alpha)
    _check_index(beta)
    rng = np.random.default_rng(seed)
    v = measure_visibility(ALPHABET.states[alpha], ALPHABET.states[beta],
                           settings, noise, shots, rng)
    return v, min(max((1 + v) / 2, 0.0), 1.0)


def full_report(settings: PhaseGateSettings = PhaseGateSettings(),
                noise: NoiseConfig = NOISELESS, shots: int | None = None,
                seed=None) -> FingerprintReport:
    """Evaluate all 36 (alpha, beta) combinations, row by row."""
    rng = np.random.default_rng(seed)
    n = len(ALPHABET.states)
    table = np.empty((n, n))
    accept = np.empty((n, n))
    for a, b in itertools.product(range(n), repeat=2):
        table[a, b], accept[a, b] = referee_compare(a, b, settings, noise, shots, rng)
    distinct = table[~np.eye(n, dtype=bool)]
    max_distinct = float(distinct.max())
    return FingerprintReport(table, accept, max_distinct, (1 + max_distinct) / 2)


def classical_baseline() -> float:
    """Error of the best classical one-bit fingerprint with one-sided error.

    This is a known result quoted as a constant, not computed here.
    """
    return CLASSICAL_ONE_BIT_ERROR


def amplified_acceptance(alpha: int, beta: int, rounds: int, trials: int,
                         seed=None, noise: NoiseConfig = NOISELESS) -> float:
    """Fraction of ``trials`` in which the referee accepts after ``rounds`` single-shot tests.

    The referee rejects as soon as any round finds the ancilla in |1>.
    """
    if rounds < 1 or trials < 1:
        raise ValueError("rounds and trials must be >= 1")
    rng = np.random.default_rng(seed)
    _, p_accept = referee_compare(alpha, beta, noise=noise, seed=rng)
    zeros = rng.random((trials, rounds)) < p_accept
    return float(np.all(zeros, axis=1).mean())


def random_round(seed=None, noise: NoiseConfig = NOISELESS) -> tuple[int, int, bool]:
    """Alice and Bob pick uniformly from the alphabet; the referee runs one shot.

    Returns (alpha, beta, declared_equal).
    """
    rng = np.random.default_rng(seed)
    alpha, beta = (int(i) for i in rng.integers(0, len(LABELS), size=2))
    _, p_accept = referee_compare(alpha, beta, noise=noise, seed=rng)
    return alpha, beta, bool(rng.random() < p_accept)


def theoretical_one_sided_error(delta: float = 1 / math.sqrt(2)) -> float:
    return (1 + delta**2) / 2
