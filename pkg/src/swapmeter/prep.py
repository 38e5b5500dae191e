"""Preparation of arbitrary qubit mixed states from |0><0|.

Every target is reached by the same three steps: an x rotation that sets the
z component to the target length, a z dephasing that removes the transverse
part, and a tilt rotation carrying +z onto the target direction.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from swapmeter import gates, linalg, states
from swapmeter.exceptions import UnphysicalStateError
from swapmeter.states import BlochVector, QubitState

X_AXIS = (1.0, 0.0, 0.0)


@dataclass(frozen=True)
class PreparationStep:
    kind: str  # "rotation" | "dephase"
    axis: tuple[float, float, float] | None = None
    angle: float | None = None

    def to_dict(self) -> dict:
        return {"kind": self.kind,
                "axis": list(self.axis) if self.axis is not None else None,
                "angle": self.angle}


@dataclass(frozen=True)
class PreparationRecipe:
    target: BlochVector
    steps: tuple[PreparationStep, ...]
    intermediates: tuple[QubitState, ...]

    def to_json(self) -> str:
        return json.dumps([s.to_dict() for s in self.steps])


def _apply(step: PreparationStep, rho: QubitState) -> QubitState:
    if step.kind == "dephase":
        return gates.dephase_z(rho)
    u = gates.rotation(step.axis, step.angle)
    return QubitState(linalg.conjugate(u, rho.matrix))


def _tilt(direction: np.ndarray) -> PreparationStep:
    # axis z x t, angle = polar angle of t
    polar = math.acos(min(max(direction[2], -1.0), 1.0))
    axis = np.array([-direction[1], direction[0], 0.0])
    norm = np.linalg.norm(axis)
    if norm < 1e-12:
        # on the z axis: nothing to do at +z, a pi flip about x at -z
        return PreparationStep("rotation", X_AXIS, 0.0 if direction[2] > 0 else math.pi)
    return PreparationStep("rotation", tuple(float(c) for c in axis / norm), polar)


def recipe_for(target: BlochVector) -> tuple[PreparationStep, ...]:
    length = target.length
    if length > 1 + states.PHYSICAL_TOL:
        raise UnphysicalStateError(f"target length {length:.12g} exceeds 1")
    length = min(length, 1.0)
    shorten = PreparationStep("rotation", X_AXIS, math.acos(length))
    if length < states.DEGENERATE_TOL:
        tilt = PreparationStep("rotation", X_AXIS, 0.0)
    else:
        tilt = _tilt(target.as_array() / length)
    return (shorten, PreparationStep("dephase"), tilt)


def prepare(target: BlochVector) -> tuple[QubitState, PreparationRecipe]:
    """Run the rotate-dephase-rotate pipeline and return the state and its recipe."""
    steps = recipe_for(target)
    rho = states.ZERO
    intermediates = []
    for step in steps:
        rho = _apply(step, rho)
        intermediates.append(rho)
    return rho, PreparationRecipe(target, steps, tuple(intermediates))


def prepare_state(target) -> QubitState:
    """Prepared state only, for a BlochVector or a length-3 sequence."""
    if not isinstance(target, BlochVector):
        target = BlochVector.from_array(target)
    return prepare(target)[0]


def angles_to_bloch(r: float, theta: float, phi: float) -> BlochVector:
    """Bloch vector r * (cos(theta) cos(phi), cos(theta) sin(phi), sin(theta)).

    ``theta`` is an elevation above the xy plane, ``phi`` the azimuth.
    """
    if not 0.0 <= r <= 1.0:
        raise UnphysicalStateError(f"length must be in [0, 1], got {r}")
    return BlochVector(r * math.cos(theta) * math.cos(phi),
                       r * math.cos(theta) * math.sin(phi),
                       r * math.sin(theta))


def prepare_angles(r: float, theta: float, phi: float) -> QubitState:
    return states.from_bloch(angles_to_bloch(r, theta, phi))
