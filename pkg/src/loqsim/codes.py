"""Stabilizer codes: validation, logical basis states, code-space projector.

A code is specified by commuting generators plus anticommuting logical X/Z
words. Validation is done with explicit dense-matrix checks (registers are
small), and the logical basis is either verified against supplied amplitudes
or computed from scratch: the +1 eigenvector of logical Z inside the joint
+1 eigenspace of the generators, with the global phase fixed so that the
largest-magnitude amplitude is real positive, and ``|1>_L`` defined through
the logical-X action on ``|0>_L``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .paulis import (
    ConfigError,
    PauliString,
    PureState,
    parse_pauli,
    pauli_product,
    realize,
    magnetization,
)

_CHECK_TOL = 1e-10


@dataclass(frozen=True)
class CodeSpec:
    """Unvalidated code definition (as read from config or the registry)."""

    name: str
    n: int
    generators: tuple[PauliString, ...]
    logical_x: PauliString
    logical_z: PauliString
    basis_zero: np.ndarray | None = field(default=None, repr=False)
    basis_one: np.ndarray | None = field(default=None, repr=False)


@dataclass(frozen=True)
class StabilizerCode:
    """A validated code with its logical operators, basis, and projector."""

    name: str
    n: int
    generators: tuple[PauliString, ...]
    logical_x: PauliString
    logical_z: PauliString
    logical_y: PauliString
    basis_zero: PureState
    basis_one: PureState
    projector: np.ndarray = field(repr=False)
    matrix_x: np.ndarray = field(repr=False)
    matrix_y: np.ndarray = field(repr=False)
    matrix_z: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return 2**self.n

    def logical_matrix(self, axis: str) -> np.ndarray:
        return {"x": self.matrix_x, "y": self.matrix_y, "z": self.matrix_z}[axis]


def _fix_global_phase(amplitudes: np.ndarray) -> np.ndarray:
    """Rotate the global phase so the largest-magnitude entry is real positive."""
    magnitudes = np.abs(amplitudes)
    top = float(magnitudes.max())
    # first index within tolerance of the maximum, for deterministic ties
    leader = int(np.nonzero(magnitudes > top - 1e-12)[0][0])
    phase = amplitudes[leader] / abs(amplitudes[leader])
    return amplitudes / phase


def code_projector(generators: tuple[PauliString, ...], n: int) -> np.ndarray:
    """Product over generators of (I + S_k)/2; identity if there are none."""
    dim = 2**n
    projector = np.eye(dim, dtype=complex)
    for gen in generators:
        projector = projector @ (np.eye(dim, dtype=complex) + realize(gen, n)) / 2
    return projector


def validate_code(spec: CodeSpec) -> StabilizerCode:
    """Check all code invariants by dense-matrix evaluation; build the code.

    Raises ConfigError when the generators fail to commute, the logicals
    (anti)commute incorrectly, the code space dimension is not 2, or
    supplied basis states are inconsistent with the stabilizers.
    """
    n = spec.n
    if n < 1:
        raise ConfigError(f"register size must be >= 1, got {n}")
    for word in (*spec.generators, spec.logical_x, spec.logical_z):
        if word.n != n:
            raise ConfigError(f"word {word} does not act on {n} sites")
        if word.phase not in (1, -1):
            raise ConfigError(f"word {word} must carry a real sign, not {word.phase}")
    if spec.logical_x.is_identity_word or spec.logical_z.is_identity_word:
        raise ConfigError("logical operators must be non-identity words")

    gen_matrices = [realize(g, n) for g in spec.generators]
    mat_x = realize(spec.logical_x, n)
    mat_z = realize(spec.logical_z, n)

    for i, gi in enumerate(gen_matrices):
        for j in range(i + 1, len(gen_matrices)):
            gj = gen_matrices[j]
            if np.max(np.abs(gi @ gj - gj @ gi)) > _CHECK_TOL:
                raise ConfigError(
                    f"generators {spec.generators[i]} and {spec.generators[j]} "
                    "do not commute"
                )
    for gen, gmat in zip(spec.generators, gen_matrices):
        if np.max(np.abs(gmat @ mat_x - mat_x @ gmat)) > _CHECK_TOL:
            raise ConfigError(f"logical X does not commute with {gen}")
        if np.max(np.abs(gmat @ mat_z - mat_z @ gmat)) > _CHECK_TOL:
            raise ConfigError(f"logical Z does not commute with {gen}")
    if np.max(np.abs(mat_x @ mat_z + mat_z @ mat_x)) > _CHECK_TOL:
        raise ConfigError("logical X and logical Z must anticommute")

    projector = code_projector(spec.generators, n)
    if np.max(np.abs(projector @ projector - projector)) > _CHECK_TOL:
        raise ConfigError("code projector is not idempotent")
    space_dim = float(np.trace(projector).real)
    if abs(space_dim - 2.0) > _CHECK_TOL:
        raise ConfigError(
            f"code space dimension is {space_dim:g}, expected 2 (one logical qubit)"
        )

    logical_y = pauli_product(PauliString(1j, ("I",) * n), pauli_product(spec.logical_x, spec.logical_z))
    mat_y = realize(logical_y, n)

    if spec.basis_zero is not None:
        zero = PureState(spec.basis_zero)
        one = PureState(spec.basis_one) if spec.basis_one is not None else PureState(mat_x @ zero.amplitudes)
    else:
        zero, one = _compute_basis(projector, mat_x, mat_z)

    for state, sign, label in ((zero, 1.0, "|0>_L"), (one, -1.0, "|1>_L")):
        amps = state.amplitudes
        if np.max(np.abs(projector @ amps - amps)) > _CHECK_TOL:
            raise ConfigError(f"{label} is not stabilized by every generator")
        if np.max(np.abs(mat_z @ amps - sign * amps)) > _CHECK_TOL:
            raise ConfigError(f"{label} is not a {sign:+g} eigenstate of logical Z")
    if np.max(np.abs(mat_x @ zero.amplitudes - one.amplitudes)) > _CHECK_TOL:
        raise ConfigError("logical X does not map |0>_L onto |1>_L")
    if abs(zero.overlap(one)) > _CHECK_TOL:
        raise ConfigError("logical basis states are not orthogonal")

    projector = projector.copy()
    projector.setflags(write=False)
    return StabilizerCode(
        name=spec.name,
        n=n,
        generators=tuple(spec.generators),
        logical_x=spec.logical_x,
        logical_z=spec.logical_z,
        logical_y=logical_y,
        basis_zero=zero,
        basis_one=one,
        projector=projector,
        matrix_x=mat_x,
        matrix_y=mat_y,
        matrix_z=mat_z,
    )


def _compute_basis(
    projector: np.ndarray, mat_x: np.ndarray, mat_z: np.ndarray
) -> tuple[PureState, PureState]:
    eigenvalues, eigenvectors = np.linalg.eigh(projector)
    inside = eigenvectors[:, eigenvalues > 0.5]
    if inside.shape[1] != 2:
        raise ConfigError(f"projector range has dimension {inside.shape[1]}, expected 2")
    z_in_code = inside.conj().T @ mat_z @ inside
    z_eigs, z_vecs = np.linalg.eigh(z_in_code)
    zero_amps = _fix_global_phase(inside @ z_vecs[:, np.argmax(z_eigs)])
    one_amps = mat_x @ zero_amps
    return PureState(zero_amps), PureState(one_amps)


def logical_state(code: StabilizerCode, theta: float, phi: float) -> PureState:
    """The code-space state cos(theta/2)|0>_L + e^{i phi} sin(theta/2)|1>_L."""
    if not 0 <= theta <= np.pi:
        raise ConfigError(f"theta must lie in [0, pi], got {theta}")
    if not 0 <= phi < 2 * np.pi:
        raise ConfigError(f"phi must lie in [0, 2*pi), got {phi}")
    amps = (
        np.cos(theta / 2) * code.basis_zero.amplitudes
        + np.exp(1j * phi) * np.sin(theta / 2) * code.basis_one.amplitudes
    )
    return PureState(amps)


def eigenstate(code: StabilizerCode, label: str) -> PureState:
    """Named +/-1 logical eigenstates: '+X_L', '+Y_L', '+Z_L', '-Z_L', ..."""
    table = {
        "+X_L": (np.pi / 2, 0.0),
        "-X_L": (np.pi / 2, np.pi),
        "+Y_L": (np.pi / 2, np.pi / 2),
        "-Y_L": (np.pi / 2, 3 * np.pi / 2),
        "+Z_L": (0.0, 0.0),
        "-Z_L": (np.pi, 0.0),
    }
    if label not in table:
        raise ConfigError(f"unknown eigenstate label {label!r}")
    theta, phi = table[label]
    return logical_state(code, theta, phi)


def spec_from_config(config: dict) -> CodeSpec:
    """Build a CodeSpec from its JSON form.

    Schema: {"name", "n", "generators": ["+YXY", ...], "logical_x", "logical_z",
    "basis_zero": optional [[re, im], ...], "basis_one": optional}.
    """
    try:
        name = str(config["name"])
        n = int(config["n"])
        generators = tuple(parse_pauli(g, n) for g in config["generators"])
        logical_x = parse_pauli(config["logical_x"], n)
        logical_z = parse_pauli(config["logical_z"], n)
    except KeyError as exc:
        raise ConfigError(f"code config is missing field {exc}") from exc
    basis = {}
    for key in ("basis_zero", "basis_one"):
        if config.get(key) is not None:
            pairs = config[key]
            try:
                amps = np.array([complex(re, im) for re, im in pairs])
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"{key} must be a list of [re, im] pairs") from exc
            if amps.size != 2**n:
                raise ConfigError(f"{key} must have 2^{n} amplitudes")
            basis[key] = amps
    return CodeSpec(
        name=name,
        n=n,
        generators=generators,
        logical_x=logical_x,
        logical_z=logical_z,
        basis_zero=basis.get("basis_zero"),
        basis_one=basis.get("basis_one"),
    )


def builtin_codes() -> dict[str, CodeSpec]:
    """Registry of built-in codes.

    * ``three_qubit``: repetition-style code with GHZ-like basis states,
      sensitive to collective dephasing through four magnetization values.
    * ``grassl``: four-qubit erasure code, basis |Phi+>|Phi+> / |Phi->|Phi->.
    * ``grassl_dfs``: locally-rotated variant with basis |Psi+>|Psi+> /
      |Psi->|Psi->; every contributing ket has magnetization 0, so the code
      space sits inside a decoherence-free subspace of collective dephasing.
      The generator signs are adjusted so all stabilizer eigenvalues are +1
      on that basis (validated, not assumed).
    * ``physical``: a bare qubit as the trivial code (no generators), so the
      same observable pipeline applies to unencoded qubits.
    """
    three = CodeSpec(
        name="three_qubit",
        n=3,
        generators=(parse_pauli("YXY", 3), parse_pauli("XYY", 3)),
        logical_x=parse_pauli("-YYZ", 3),
        logical_z=parse_pauli("XXX", 3),
    )
    grassl = CodeSpec(
        name="grassl",
        n=4,
        generators=(parse_pauli("XXXX", 4), parse_pauli("IIZZ", 4), parse_pauli("ZZII", 4)),
        logical_x=parse_pauli("ZIZI", 4),
        logical_z=parse_pauli("XXII", 4),
    )
    grassl_dfs = CodeSpec(
        name="grassl_dfs",
        n=4,
        generators=(parse_pauli("XXXX", 4), parse_pauli("-IIZZ", 4), parse_pauli("-ZZII", 4)),
        logical_x=parse_pauli("ZIZI", 4),
        logical_z=parse_pauli("XXII", 4),
    )
    physical = CodeSpec(
        name="physical",
        n=1,
        generators=(),
        logical_x=parse_pauli("X", 1),
        logical_z=parse_pauli("Z", 1),
    )
    return {c.name: c for c in (three, grassl, grassl_dfs, physical)}


def load_code(name_or_config) -> StabilizerCode:
    """Resolve a registry name or an inline config dict to a validated code."""
    if isinstance(name_or_config, str):
        registry = builtin_codes()
        if name_or_config not in registry:
            raise ConfigError(
                f"unknown code {name_or_config!r}; built-ins: {sorted(registry)}"
            )
        return validate_code(registry[name_or_config])
    if isinstance(name_or_config, dict):
        return validate_code(spec_from_config(name_or_config))
    raise ConfigError(f"cannot interpret code reference {name_or_config!r}")


def dfs_magnetizations(code: StabilizerCode) -> set[int]:
    """Distinct magnetizations of the kets supporting the logical basis."""
    values: set[int] = set()
    for state in (code.basis_zero, code.basis_one):
        support = np.nonzero(np.abs(state.amplitudes) > 1e-12)[0]
        values.update(magnetization(int(i), code.n) for i in support)
    return values
