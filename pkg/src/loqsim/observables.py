"""Observable extraction: logical Bloch vector, code population, leakage.

For a state rho and a validated code this module computes

* ``R = (<X_L>, <Y_L>, <Z_L>)``, the logical Bloch vector,
* ``p = <P_c>``, the code-space population,
* ``(p_x, p_y, p_z)``, logical expectations weighted by the code projector
  (these see leakage out of the code space),
* the conditional Bloch vector ``R^c = p_vec / p`` of the state projected
  back into the code space,
* the purity of the full physical state.

``p_x`` etc. are evaluated through the symmetrized product
``(L P_c + P_c L)/2``; logicals commute with the projector, so this equals
``<L P_c>``, but the symmetrization turns a silently broken code into a
raised error instead of a complex expectation value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .codes import StabilizerCode, logical_state
from .paulis import DensityMatrix, NumericalError, expectation, purity

_BOUND_TOL = 1e-9
_POPULATION_FLOOR = 1e-12

CSV_HEADER = "t,Rx,Ry,Rz,p,px,py,pz,purity,Rxc,Ryc,Rzc"


@dataclass(frozen=True)
class ObservableRecord:
    """All tracked quantities of one state at one time."""

    t: float
    r: tuple[float, float, float]
    p: float
    p_vec: tuple[float, float, float]
    purity: float
    r_cond: tuple[float, float, float] | None

    def __post_init__(self) -> None:
        if any(abs(v) > 1 + _BOUND_TOL for v in self.r):
            raise NumericalError(f"Bloch component out of [-1, 1]: {self.r}")
        if not -_BOUND_TOL <= self.p <= 1 + _BOUND_TOL:
            raise NumericalError(f"code population {self.p} out of [0, 1]")
        if any(abs(v) > self.p + _BOUND_TOL for v in self.p_vec):
            raise NumericalError(
                f"in-code expectation exceeds code population: {self.p_vec} vs {self.p}"
            )

    def csv_row(self) -> str:
        cond = self.r_cond if self.r_cond is not None else ("", "", "")
        cells = [self.t, *self.r, self.p, *self.p_vec, self.purity, *cond]
        return ",".join("" if c == "" else format(c, ".17g") for c in cells)


def logical_bloch(rho: DensityMatrix, code: StabilizerCode) -> tuple[float, float, float]:
    """Expectations of the three logical Pauli words."""
    return (
        expectation(code.matrix_x, rho),
        expectation(code.matrix_y, rho),
        expectation(code.matrix_z, rho),
    )


def code_population(rho: DensityMatrix, code: StabilizerCode) -> float:
    """Tr(P_c rho): the probability of post-selecting no syndrome error."""
    return expectation(np.asarray(code.projector), rho)


def in_code_expectations(
    rho: DensityMatrix, code: StabilizerCode
) -> tuple[float, float, float]:
    """(p_x, p_y, p_z): logical expectations confined to the code space."""
    projector = np.asarray(code.projector)
    values = []
    for mat in (code.matrix_x, code.matrix_y, code.matrix_z):
        sym = (mat @ projector + projector @ mat) / 2
        values.append(expectation(sym, rho))
    return tuple(values)


def conditional_bloch(
    rho: DensityMatrix, code: StabilizerCode
) -> tuple[float, float, float]:
    """p_vec / p: Bloch vector of the state conditioned on staying in-code."""
    p = code_population(rho, code)
    if p < _POPULATION_FLOOR:
        raise NumericalError(f"code population {p:.3e} too small for conditioning")
    vec = tuple(v / p for v in in_code_expectations(rho, code))
    norm = float(np.linalg.norm(vec))
    if norm > 1 + _BOUND_TOL:
        raise NumericalError(f"conditional Bloch vector has norm {norm} > 1")
    return vec


def record(rho: DensityMatrix, code: StabilizerCode, t: float) -> ObservableRecord:
    """Evaluate the full observable set of one state."""
    p = code_population(rho, code)
    r_cond = None
    if p >= _POPULATION_FLOOR:
        r_cond = conditional_bloch(rho, code)
    return ObservableRecord(
        t=t,
        r=logical_bloch(rho, code),
        p=p,
        p_vec=in_code_expectations(rho, code),
        purity=purity(rho),
        r_cond=r_cond,
    )


Channel = Callable[[DensityMatrix, float], DensityMatrix]

_PROBES = (
    ("x", np.pi / 2, 0.0),
    ("y", np.pi / 2, np.pi / 2),
    ("z+", 0.0, 0.0),
    ("z-", np.pi, 0.0),
)


def volume_element(channel: Channel, code: StabilizerCode, t: float) -> float:
    """|det M| of the affine map induced on conditional Bloch vectors.

    Four probe states (+X_L, +Y_L, +Z_L, -Z_L) are sent through the channel;
    the translation part is taken as the midpoint of the evolved +/-Z pair
    and the linear part M from the probe images relative to it. A
    non-monotonic time series of |det M| witnesses non-Markovian dynamics
    at the logical level; this function returns the value at one time.
    """
    images = {}
    for label, theta, phi in _PROBES:
        rho = channel(logical_state(code, theta, phi).density(), t)
        images[label] = np.array(conditional_bloch(rho, code))
    center = (images["z+"] + images["z-"]) / 2
    linear = np.column_stack(
        (
            images["x"] - center,
            images["y"] - center,
            (images["z+"] - images["z-"]) / 2,
        )
    )
    return abs(float(np.linalg.det(linear)))
