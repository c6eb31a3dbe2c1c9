"""Noise channels: exact dephasing maps, a Lindblad integrator, Monte Carlo.

Three independent routes to the same dephasing dynamics:

* analytic maps that multiply each density-matrix element by its exact
  decay factor (global noise: exp[-g*t*(dm)^2/8] from the magnetization
  difference dm; local noise: exp[-g*t*dh/2] from the Hamming distance dh);
* a fixed-step RK4 integrator for the Lindblad equation with collapse
  operators (sqrt(g)/2) Z (one collective operator, or one per site);
* a Monte-Carlo sampler that draws the integrated random phase exactly,
  Phi ~ Normal(0, g*t), applies the corresponding diagonal unitary per
  trajectory and averages.

The rate convention is pinned so that a single qubit's coherence decays
as exp(-g*t/2); all engines follow it.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .paulis import (
    DensityMatrix,
    NumericalError,
    PauliString,
    magnetization,
    realize,
    site_bits,
)

logger = logging.getLogger(__name__)

CORRELATIONS = ("global", "local")
NOISE_KINDS = ("dephasing", "amplitude_damping")


@dataclass(frozen=True)
class NoiseParams:
    """Physical noise description: rate, spatial correlation, and kind."""

    gamma: float
    correlation: str = "global"
    kind: str = "dephasing"

    def __post_init__(self) -> None:
        if self.gamma < 0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")
        if self.correlation not in CORRELATIONS:
            raise ValueError(f"correlation must be one of {CORRELATIONS}")
        if self.kind not in NOISE_KINDS:
            raise ValueError(f"kind must be one of {NOISE_KINDS}")


@dataclass(frozen=True)
class EvolutionResult:
    """Time grid and the states stored along an integration run."""

    times: tuple[float, ...]
    states: tuple[DensityMatrix, ...]

    def __post_init__(self) -> None:
        if len(self.times) != len(self.states):
            raise ValueError("times and states must have equal length")
        if not self.times or self.times[0] != 0.0:
            raise ValueError("time grid must start at 0")
        if any(b <= a for a, b in zip(self.times, self.times[1:])):
            raise ValueError("time grid must be strictly increasing")

    def state_at(self, t: float, atol: float = 1e-9) -> DensityMatrix:
        for time, state in zip(self.times, self.states):
            if abs(time - t) <= atol:
                return state
        raise KeyError(f"time {t} not on the stored grid")


@lru_cache(maxsize=None)
def magnetization_vector(n: int) -> np.ndarray:
    vec = np.array([magnetization(i, n) for i in range(2**n)], dtype=float)
    vec.setflags(write=False)
    return vec


@lru_cache(maxsize=None)
def hamming_matrix(n: int) -> np.ndarray:
    idx = np.arange(2**n)
    dist = np.array(
        [[int(a ^ b).bit_count() for b in idx] for a in idx], dtype=float
    )
    dist.setflags(write=False)
    return dist


@lru_cache(maxsize=None)
def _sign_table(n: int) -> np.ndarray:
    """alpha[k, j] = +1 if site k+1 of ket j is |0>, else -1."""
    table = np.array(
        [[1 - 2 * bit for bit in site_bits(j, n)] for j in range(2**n)], dtype=float
    ).T
    table.setflags(write=False)
    return table


def _require_nonnegative_time(t: float) -> None:
    if t < 0:
        raise ValueError(f"time must be >= 0, got {t}")


def global_dephasing_map(rho: DensityMatrix, gamma: float, t: float) -> DensityMatrix:
    """Exact collective-dephasing channel for duration t."""
    _require_nonnegative_time(t)
    m = magnetization_vector(rho.n)
    dm = m[:, None] - m[None, :]
    factors = np.exp(-(gamma * t / 8.0) * dm**2)
    return DensityMatrix(rho.entries * factors)


def local_dephasing_map(rho: DensityMatrix, gamma: float, t: float) -> DensityMatrix:
    """Exact uncorrelated-dephasing channel (equal rate on every site)."""
    _require_nonnegative_time(t)
    factors = np.exp(-(gamma * t / 2.0) * hamming_matrix(rho.n))
    return DensityMatrix(rho.entries * factors)


def dephasing_collapse_ops(n: int, gamma: float, correlation: str) -> list[np.ndarray]:
    """Collapse operators reproducing the analytic dephasing factors.

    The (sqrt(gamma)/2) Z normalization makes the Lindblad off-diagonal
    decay rates equal gamma*(dm)^2/8 (global) and gamma*dh/2 (local),
    i.e. exactly the analytic maps.
    """
    if correlation not in CORRELATIONS:
        raise ValueError(f"correlation must be one of {CORRELATIONS}")
    scale = np.sqrt(gamma) / 2.0
    if correlation == "global":
        total = sum(
            realize(_single_site_word("Z", k, n), n) for k in range(1, n + 1)
        )
        return [scale * total]
    return [
        scale * realize(_single_site_word("Z", k, n), n) for k in range(1, n + 1)
    ]


def amplitude_damping_collapse_ops(n: int, gamma: float) -> list[np.ndarray]:
    """One sqrt(gamma) lowering operator per site, damping toward |0>."""
    lower = np.array([[0, 1], [0, 0]], dtype=complex)
    ops = []
    for k in range(1, n + 1):
        op = np.array([[1]], dtype=complex)
        for site in range(1, n + 1):
            op = np.kron(op, lower if site == k else np.eye(2, dtype=complex))
        ops.append(np.sqrt(gamma) * op)
    return ops


def _single_site_word(letter: str, site: int, n: int) -> PauliString:
    letters = ["I"] * n
    letters[site - 1] = letter
    return PauliString(1 + 0j, tuple(letters))


def _dissipator(rho: np.ndarray, collapses, daggers, grams) -> np.ndarray:
    out = np.zeros_like(rho)
    for c, cd, gram in zip(collapses, daggers, grams):
        out += c @ rho @ cd - 0.5 * (gram @ rho + rho @ gram)
    return out


def lindblad_evolve(
    rho0: DensityMatrix,
    collapses: list[np.ndarray],
    t_final: float,
    n_steps: int,
    *,
    store_every: int = 1,
    richardson_tol: float | None = 1e-8,
) -> EvolutionResult:
    """Fixed-step RK4 integration of the pure-dissipator Lindblad equation.

    The coherent term is zero: the noise model lives in a frame where the
    Hamiltonian vanishes. Stored states are re-Hermitized and trace
    renormalized (the drift is logged). When ``richardson_tol`` is set, the
    run is repeated with half the steps and rejected (NumericalError) if the
    final states differ by more than the tolerance.
    """
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    if t_final < 0:
        raise ValueError("t_final must be >= 0")
    dim = rho0.dim
    for c in collapses:
        if c.shape != (dim, dim):
            raise ValueError(f"collapse operator shape {c.shape} does not match state")

    final, times, states = _rk4_run(rho0, collapses, t_final, n_steps, store_every)
    if richardson_tol is not None and n_steps >= 2 and t_final > 0:
        coarse, _, _ = _rk4_run(rho0, collapses, t_final, n_steps // 2, store_every=0)
        drift = float(np.max(np.abs(final - coarse)))
        if drift >= richardson_tol:
            raise NumericalError(
                f"step-size check failed: halving n_steps moves the final state "
                f"by {drift:.3e} >= {richardson_tol:.1e}; increase n_steps"
            )
    return EvolutionResult(tuple(times), tuple(states))


def _rk4_run(rho0, collapses, t_final, n_steps, store_every):
    daggers = [c.conj().T for c in collapses]
    grams = [cd @ c for c, cd in zip(collapses, daggers)]
    h = t_final / n_steps
    rho = rho0.entries.astype(complex)
    times = [0.0]
    states = [rho0]
    worst_drift = 0.0
    for step in range(1, n_steps + 1):
        k1 = _dissipator(rho, collapses, daggers, grams)
        k2 = _dissipator(rho + 0.5 * h * k1, collapses, daggers, grams)
        k3 = _dissipator(rho + 0.5 * h * k2, collapses, daggers, grams)
        k4 = _dissipator(rho + h * k3, collapses, daggers, grams)
        rho = rho + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if store_every and step % store_every == 0:
            hermitized = (rho + rho.conj().T) / 2
            trace = float(np.trace(hermitized).real)
            worst_drift = max(worst_drift, abs(trace - 1.0))
            times.append(step * h)
            states.append(DensityMatrix(hermitized / trace))
    if worst_drift > 0:
        logger.debug("lindblad trace drift before renormalization: %.3e", worst_drift)
    return rho, times, states


def dephasing_phase_samples(
    n: int, gamma: float, t: float, n_traj: int, seed: int, correlation: str
) -> np.ndarray:
    """Per-trajectory accumulated phase of every basis ket, shape (n_traj, 2^n).

    Trajectory ``i`` always consumes the same slice of the counter-based
    random stream keyed by ``seed``, so results do not depend on execution
    or reduction order.
    """
    if n_traj < 1:
        raise ValueError("n_traj must be >= 1")
    _require_nonnegative_time(t)
    if correlation not in CORRELATIONS:
        raise ValueError(f"correlation must be one of {CORRELATIONS}")
    rng = np.random.Generator(np.random.Philox(key=int(seed)))
    width = np.sqrt(gamma * t)
    if correlation == "global":
        field_phase = rng.normal(0.0, 1.0, size=(n_traj, 1)) * width
        return 0.5 * field_phase * magnetization_vector(n)[None, :]
    field_phase = rng.normal(0.0, 1.0, size=(n_traj, n)) * width
    return 0.5 * field_phase @ _sign_table(n)


def monte_carlo_dephasing(
    rho0: DensityMatrix,
    gamma: float,
    t: float,
    n_traj: int,
    seed: int,
    correlation: str = "global",
) -> DensityMatrix:
    """Average of per-trajectory dephased states over sampled noise phases."""
    phases = dephasing_phase_samples(rho0.n, gamma, t, n_traj, seed, correlation)
    kernel = average_phase_kernel(phases)
    return DensityMatrix(kernel * rho0.entries)


def average_phase_kernel(phases: np.ndarray) -> np.ndarray:
    """Mean over trajectories of exp(-i(phi_a - phi_b)), exactly Hermitian."""
    v = np.exp(-1j * phases)
    return (v.T @ v.conj()) / phases.shape[0]


def trajectory_expectations(
    rho0: DensityMatrix, op: np.ndarray, phases: np.ndarray
) -> np.ndarray:
    """Tr(op * rho_i) for every trajectory's dephased state, as real values."""
    v = np.exp(-1j * phases)
    core = op.T * rho0.entries
    values = np.einsum("tb,ba,ta->t", v, core, v.conj())
    return values.real
