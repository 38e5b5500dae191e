"""Simulator of the controlled-SWAP scattering circuit used as a quantum multimeter."""
from swapmeter.circuit import (NoiseConfig, ScatteringOutcome, ShotResult, measure_visibility,
                               run_closed_form, run_full, sample)
from swapmeter.gates import PhaseGateSettings
from swapmeter.states import BlochVector, QubitState

__all__ = [
    "BlochVector", "NoiseConfig", "PhaseGateSettings", "QubitState", "ScatteringOutcome",
    "ShotResult", "measure_visibility", "run_closed_form", "run_full", "sample",
]
__version__ = "0.1.0"
