"""Closed-form decay curves under collective dephasing, and fit models.

These expressions are written down directly (no shared code with the
channel engines) so that engine-vs-formula agreement is a meaningful
cross-check. All curves take the initial state angles (theta, phi), the
dephasing rate gamma, and the time t; gamma and t only ever enter as the
product gamma*t.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

OBSERVABLE_IDS = ("Rx", "Ry", "Rz", "p", "px", "py", "pz")


def _check_time(t) -> None:
    if np.any(np.asarray(t) < 0):
        raise ValueError("time must be >= 0")


def physical_bloch(theta: float, phi: float, gamma: float, t):
    """Bloch vector of one bare qubit under dephasing at rate gamma.

    The transverse components decay as exp(-gamma*t/2); the longitudinal
    one is untouched (infinite T1).
    """
    _check_time(t)
    decay = np.exp(-0.5 * gamma * np.asarray(t, dtype=float))
    return (
        decay * np.sin(theta) * np.cos(phi),
        decay * np.sin(theta) * np.sin(phi),
        np.cos(theta) * np.ones_like(decay),
    )


def three_qubit_observables(theta: float, phi: float, gamma: float, t):
    """(Rx, Ry, Rz, p, px, py, pz) for the three-qubit code.

    The coherences of the encoded state connect magnetization sectors
    differing by 2, 4 and 6, so three time scales appear: exp(-g*t/2),
    exp(-2*g*t) and exp(-9*g*t/2).
    """
    _check_time(t)
    gt = gamma * np.asarray(t, dtype=float)
    slow = np.exp(-0.5 * gt)
    mid = np.exp(-2.0 * gt)
    fast = np.exp(-4.5 * gt)
    sin_t, cos_t = np.sin(theta), np.cos(theta)
    cos_half_sq = np.cos(theta / 2) ** 2
    sin_half_sq = np.sin(theta / 2) ** 2
    transverse = np.exp(-1.25 * gt) * np.cosh(0.75 * gt)
    return (
        mid * sin_t * np.cos(phi),
        slow * sin_t * np.sin(phi),
        slow * cos_half_sq - fast * sin_half_sq,
        0.5 * (slow * cos_half_sq + fast * sin_half_sq + 1.0),
        transverse * sin_t * np.cos(phi),
        transverse * sin_t * np.sin(phi),
        0.5 * (cos_t - fast * sin_half_sq + slow * cos_half_sq),
    )


def four_qubit_observables(theta: float, phi: float, gamma: float, t):
    """(Rx, Ry, Rz, p, px, py, pz) for the four-qubit erasure code.

    The logical X word is diagonal, so Rx never decays; the code-space
    population relaxes to 1/2 on the exp(-8*g*t) scale.
    """
    _check_time(t)
    gt = gamma * np.asarray(t, dtype=float)
    mid = np.exp(-2.0 * gt)
    fast = np.exp(-8.0 * gt)
    sx = np.sin(theta) * np.cos(phi)
    sy = np.sin(theta) * np.sin(phi)
    cos_t = np.cos(theta)
    ones = np.ones_like(gt)
    return (
        sx * ones,
        mid * sy,
        mid * cos_t,
        0.25 * (3.0 + fast + (fast - 1.0) * sx),
        0.25 * (fast - 1.0 + (fast + 3.0) * sx),
        mid * sy,
        mid * cos_t,
    )


def rotated_grassl_state(delta: float) -> tuple[float, float]:
    """(theta, phi) of the miscalibrated state cos(d)|0>_L + sin(d)|1>_L.

    The superposition uses cos/sin of delta itself, not half-angles, so
    theta = 2*delta.
    """
    if not abs(delta) < np.pi / 2:
        raise ValueError(f"delta must satisfy |delta| < pi/2, got {delta}")
    return (2.0 * delta, 0.0)


def relaxation_model(t, time_constant: float, eq_value: float, init_value: float):
    """Generic single-exponential relaxation toward an equilibrium value."""
    if time_constant <= 0:
        raise ValueError("time constant must be positive")
    return eq_value - np.exp(-np.asarray(t, dtype=float) / time_constant) * (
        eq_value - init_value
    )


@dataclass(frozen=True)
class PredictionCurve:
    """One named observable as a function of (theta, phi, gamma, t)."""

    observable: str
    func: Callable

    def __call__(self, theta: float, phi: float, gamma: float, t):
        return self.func(theta, phi, gamma, t)


def _curve_family(code_name: str) -> Callable:
    if code_name == "three_qubit":
        return three_qubit_observables
    if code_name == "grassl":
        return four_qubit_observables
    if code_name == "grassl_dfs":
        # every contributing ket has magnetization 0: frozen at the t=0 values
        return lambda theta, phi, gamma, t: tuple(
            v * np.ones_like(np.asarray(t, dtype=float))
            for v in four_qubit_observables(theta, phi, gamma, 0.0)
        )
    if code_name == "physical":
        def physical_family(theta, phi, gamma, t):
            x, y, z = physical_bloch(theta, phi, gamma, t)
            return (x, y, z, np.ones_like(x), x, y, z)

        return physical_family
    raise KeyError(f"no closed forms for code {code_name!r}")


def prediction_curves(code_name: str) -> dict[str, PredictionCurve]:
    """The seven decay curves of a built-in code, keyed by observable id."""
    family = _curve_family(code_name)

    def make(index: int) -> Callable:
        return lambda theta, phi, gamma, t: family(theta, phi, gamma, t)[index]

    return {
        name: PredictionCurve(name, make(i)) for i, name in enumerate(OBSERVABLE_IDS)
    }


def closed_form_observables(
    code_name: str, theta: float, phi: float, gamma: float, t: float
) -> dict[str, float]:
    """All seven closed-form observables at one time, keyed by id."""
    values = _curve_family(code_name)(theta, phi, gamma, t)
    return {name: float(v) for name, v in zip(OBSERVABLE_IDS, values)}
