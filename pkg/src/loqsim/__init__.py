"""Logical-qubit decay simulator.

Simulates stabilizer-encoded logical qubits under spatially correlated
dephasing and amplitude-damping noise with three independent engines
(exact analytic maps, a Lindblad integrator, and a Monte-Carlo phase
sampler), extracts logical observables, and fits decay curves.
"""

from .paulis import (
    ConfigError,
    DensityMatrix,
    NumericalError,
    PauliString,
    PureState,
    expectation,
    hamming,
    magnetization,
    parse_pauli,
    pauli_product,
    purity,
    realize,
)
from .codes import (
    CodeSpec,
    StabilizerCode,
    builtin_codes,
    eigenstate,
    load_code,
    logical_state,
    validate_code,
)

__all__ = [
    "ConfigError",
    "DensityMatrix",
    "NumericalError",
    "PauliString",
    "PureState",
    "expectation",
    "hamming",
    "magnetization",
    "parse_pauli",
    "pauli_product",
    "purity",
    "realize",
    "CodeSpec",
    "StabilizerCode",
    "builtin_codes",
    "eigenstate",
    "load_code",
    "logical_state",
    "validate_code",
]

__version__ = "0.1.0"
